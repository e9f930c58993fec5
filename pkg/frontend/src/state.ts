import {
    DisplayVerdict,
    ExtensionSettings,
    RequestOptions,
    Selection,
    requestVerdict,
} from './api.js';

export type VerdictListener = (verdict: DisplayVerdict) => void;

/**
 * Holds the one live verification. Submitting a newer selection aborts the
 * older in-flight request, and a response that lost the race is dropped so a
 * stale reply can never overwrite a newer verdict.
 */
export class VerdictSession {
    private seq = 0;
    private controller: AbortController | null = null;
    private current: DisplayVerdict | null = null;
    private listeners: VerdictListener[] = [];

    get verdict(): DisplayVerdict | null {
        return this.current;
    }

    onChange(listener: VerdictListener): void {
        this.listeners.push(listener);
    }

    private apply(verdict: DisplayVerdict): void {
        this.current = verdict;
        for (const listener of this.listeners) listener(verdict);
    }

    async submit(
        selection: Selection,
        settings: ExtensionSettings,
        options: RequestOptions = {},
    ): Promise<DisplayVerdict> {
        const ticket = ++this.seq;
        this.controller?.abort();
        this.controller = new AbortController();
        this.apply({ state: 'loading' });
        const verdict = await requestVerdict(selection, settings, {
            fetchFn: options.fetchFn,
            signal: this.controller.signal,
        });
        if (ticket !== this.seq) {
            return verdict; // superseded by a newer selection: drop silently
        }
        this.apply(verdict);
        return verdict;
    }
}
