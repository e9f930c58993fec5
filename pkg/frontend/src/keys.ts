// Shared between the worker and the popup; kept out of background.ts so the
// popup can import them without triggering the worker's init side effects.
export const MENU_ID = 'verify-hadith-selection';
export const LAST_VERDICT_KEY = 'lastVerdict';
export const LAST_SELECTION_KEY = 'lastSelection';
