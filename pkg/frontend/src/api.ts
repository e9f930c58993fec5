// Wire contract of the verification server plus the request helper.
// The extension renders only what arrives on the wire; grades are never
// computed locally.

export type GradeName = 'sahih' | 'moothaq' | 'hassan' | 'daeef';

export interface WireMatch {
    hadith_id: string;
    book: string;
    number: number;
    grade: GradeName;
    score: number;
    matn: string;
}

export interface VerifyResponse {
    status: 'found' | 'not_found';
    query_normalized: string;
    best_grade: GradeName | null;
    matches: WireMatch[];
}

export interface Selection {
    text: string;
    pageUrl: string;
}

export interface ExtensionSettings {
    serverBaseUrl: string;
    requestTimeoutMs: number;
}

export type DisplayVerdict =
    | { state: 'loading' }
    | { state: 'found'; bestGrade: GradeName; matches: WireMatch[]; queryNormalized: string }
    | { state: 'not_found'; queryNormalized: string }
    | { state: 'error'; message: string };

export const SERVER_UNREACHABLE = 'server unreachable';

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface RequestOptions {
    fetchFn?: FetchLike;
    signal?: AbortSignal;
}

/**
 * POST the selection to the server and fold every possible outcome into a
 * DisplayVerdict. Never throws: HTTP errors keep the server's error code,
 * timeouts and network failures become the "server unreachable" error state.
 */
export async function requestVerdict(
    selection: Selection,
    settings: ExtensionSettings,
    options: RequestOptions = {},
): Promise<DisplayVerdict> {
    const fetchFn = options.fetchFn ?? fetch;
    const controller = new AbortController();
    const timer = setTimeout(() => controller.abort(), settings.requestTimeoutMs);
    const onOuterAbort = () => controller.abort();
    options.signal?.addEventListener('abort', onOuterAbort);
    try {
        const url = new URL('/api/v1/verify', settings.serverBaseUrl).toString();
        const response = await fetchFn(url, {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify({ text: selection.text, page_url: selection.pageUrl || null }),
            signal: controller.signal,
        });
        if (!response.ok) {
            let code = `http ${response.status}`;
            try {
                const body = (await response.json()) as { error?: unknown };
                if (body && typeof body.error === 'string') code = body.error;
            } catch {
                // non-JSON error body: keep the bare status code
            }
            return { state: 'error', message: code };
        }
        const body = (await response.json()) as VerifyResponse;
        if (body.status === 'found' && body.best_grade) {
            return {
                state: 'found',
                bestGrade: body.best_grade,
                matches: body.matches ?? [],
                queryNormalized: body.query_normalized ?? '',
            };
        }
        return { state: 'not_found', queryNormalized: body.query_normalized ?? '' };
    } catch {
        return { state: 'error', message: SERVER_UNREACHABLE };
    } finally {
        clearTimeout(timer);
        options.signal?.removeEventListener('abort', onOuterAbort);
    }
}
