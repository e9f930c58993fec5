import { DisplayVerdict } from './api.js';
import { getChrome } from './chromeApi.js';
import { LAST_SELECTION_KEY, LAST_VERDICT_KEY } from './keys.js';
import { renderVerdict } from './render.js';

const chromeApi = getChrome();
if (!chromeApi) throw new Error('extension APIs unavailable');

const verdictEl = document.getElementById('verdict') as HTMLElement;
const selectionEl = document.getElementById('selection') as HTMLElement;

async function refresh(): Promise<void> {
    const stored = await chromeApi!.storage.local.get([LAST_VERDICT_KEY, LAST_SELECTION_KEY]);
    const verdict = (stored[LAST_VERDICT_KEY] as DisplayVerdict | undefined) ?? null;
    verdictEl.innerHTML = renderVerdict(verdict);
    selectionEl.textContent = (stored[LAST_SELECTION_KEY] as string | undefined) ?? '';
}

chromeApi.storage.onChanged.addListener(() => {
    void refresh();
});
void refresh();
