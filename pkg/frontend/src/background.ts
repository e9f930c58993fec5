import { Selection } from './api.js';
import { ChromeLike, getChrome } from './chromeApi.js';
import { LAST_SELECTION_KEY, LAST_VERDICT_KEY, MENU_ID } from './keys.js';
import { loadSettings } from './settings.js';
import { VerdictSession } from './state.js';

/**
 * Wire the service worker: a context-menu item on text selections sends the
 * highlighted text plus the tab URL to the server and persists the resulting
 * verdict for the popup. Returns the session so tests can observe it.
 */
export function initBackground(chromeApi: ChromeLike, fetchFn?: typeof fetch): VerdictSession {
    const session = new VerdictSession();
    // Only accepted (non-stale) verdicts ever reach storage.
    session.onChange((verdict) => {
        void chromeApi.storage.local.set({ [LAST_VERDICT_KEY]: verdict });
    });

    chromeApi.runtime.onInstalled.addListener(() => {
        chromeApi.contextMenus.create({
            id: MENU_ID,
            title: 'Verify hadith text',
            contexts: ['selection'], // the item only shows when text is selected
        });
    });

    chromeApi.contextMenus.onClicked.addListener(async (info, tab) => {
        if (info.menuItemId !== MENU_ID) return;
        // selectionText concatenates visible text across element boundaries.
        const text = info.selectionText ?? '';
        if (!text.trim()) return;
        const selection: Selection = { text, pageUrl: tab?.url ?? '' };
        await chromeApi.storage.local.set({ [LAST_SELECTION_KEY]: selection.text });
        const settings = await loadSettings(chromeApi.storage.sync);
        await session.submit(selection, settings, fetchFn ? { fetchFn } : {});
    });

    return session;
}

const runtimeChrome = getChrome();
if (runtimeChrome?.contextMenus) {
    initBackground(runtimeChrome);
}
