import { DisplayVerdict, GradeName, WireMatch } from './api.js';

// All user-facing strings live here so a locale pack can swap them out.
export const MESSAGES = {
    loading: 'Checking…',
    notFound: 'Not found in the six books',
    errorPrefix: 'Could not verify',
    emptyState: 'Highlight hadith text on a page, then pick the context-menu item to verify it.',
    gradeLabels: {
        sahih: 'Sahih',
        moothaq: 'Moothaq',
        hassan: 'Hassan',
        daeef: "Dha'eef",
    } as Record<GradeName, string>,
};

// Authentic reads positive, weak reads negative, everything else neutral.
const GRADE_CLASS: Record<GradeName, string> = {
    sahih: 'grade-strong',
    moothaq: 'grade-mid',
    hassan: 'grade-mid',
    daeef: 'grade-weak',
};

export function escapeHtml(text: string): string {
    return text
        .replace(/&/g, '&amp;')
        .replace(/</g, '&lt;')
        .replace(/>/g, '&gt;')
        .replace(/"/g, '&quot;');
}

function gradeLabel(grade: GradeName): string {
    return MESSAGES.gradeLabels[grade] ?? grade;
}

function matchRow(match: WireMatch): string {
    return (
        `<tr class="match-row">` +
        `<td class="book">${escapeHtml(match.book)} #${match.number}</td>` +
        `<td class="grade ${GRADE_CLASS[match.grade] ?? ''}">${escapeHtml(gradeLabel(match.grade))}</td>` +
        `<td class="score">${match.score.toFixed(3)}</td>` +
        `</tr>` +
        `<tr class="matn-row"><td colspan="3" class="matn" dir="rtl">${escapeHtml(match.matn)}</td></tr>`
    );
}

/** Render a verdict as popup HTML. Total over every DisplayVerdict. */
export function renderVerdict(verdict: DisplayVerdict | null): string {
    if (verdict === null) {
        return `<p class="empty">${MESSAGES.emptyState}</p>`;
    }
    switch (verdict.state) {
        case 'loading':
            return `<p class="loading">${MESSAGES.loading}</p>`;
        case 'not_found':
            return `<p class="badge grade-neutral">${MESSAGES.notFound}</p>`;
        case 'error':
            return `<p class="badge grade-error">${MESSAGES.errorPrefix}: ${escapeHtml(verdict.message)}</p>`;
        case 'found': {
            const badge = `<p class="badge ${GRADE_CLASS[verdict.bestGrade]}">${escapeHtml(gradeLabel(verdict.bestGrade))}</p>`;
            const rows = verdict.matches.map(matchRow).join('');
            return `${badge}<table class="matches">${rows}</table>`;
        }
    }
}
