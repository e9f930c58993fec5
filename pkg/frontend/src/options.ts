import { getChrome } from './chromeApi.js';
import { DEFAULT_SETTINGS, MIN_TIMEOUT_MS, loadSettings, saveSettings } from './settings.js';

const chromeApi = getChrome();
if (!chromeApi) throw new Error('extension APIs unavailable');

const urlInput = document.getElementById('server-url') as HTMLInputElement;
const timeoutInput = document.getElementById('timeout') as HTMLInputElement;
const saveButton = document.getElementById('save') as HTMLButtonElement;
const statusEl = document.getElementById('status') as HTMLElement;

void loadSettings(chromeApi.storage.sync).then((settings) => {
    urlInput.value = settings.serverBaseUrl;
    urlInput.placeholder = DEFAULT_SETTINGS.serverBaseUrl;
    timeoutInput.value = String(settings.requestTimeoutMs);
});

saveButton.addEventListener('click', () => {
    void (async () => {
        const url = urlInput.value.trim() || DEFAULT_SETTINGS.serverBaseUrl;
        try {
            new URL(url);
        } catch {
            statusEl.textContent = 'Invalid server URL';
            statusEl.className = 'status error';
            return;
        }
        const timeout = Math.max(
            MIN_TIMEOUT_MS,
            Number(timeoutInput.value) || DEFAULT_SETTINGS.requestTimeoutMs,
        );
        await saveSettings(chromeApi!.storage.sync, {
            serverBaseUrl: url,
            requestTimeoutMs: timeout,
        });
        timeoutInput.value = String(timeout);
        statusEl.textContent = `Saved. Using ${url}`;
        statusEl.className = 'status saved';
        setTimeout(() => {
            statusEl.textContent = '';
        }, 2500);
    })();
});
