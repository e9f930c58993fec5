import { ExtensionSettings } from './api.js';

// The server is self-hosted; localhost is the only safe default.
export const DEFAULT_SETTINGS: ExtensionSettings = {
    serverBaseUrl: 'http://127.0.0.1:8080',
    requestTimeoutMs: 5000,
};

export const MIN_TIMEOUT_MS = 1000;

const SETTINGS_KEY = 'settings';

export interface SettingsStorage {
    get(keys: string[]): Promise<Record<string, unknown>>;
    set(items: Record<string, unknown>): Promise<void>;
}

/** Coerce whatever is in storage into valid settings, falling back per field. */
export function sanitizeSettings(raw: unknown): ExtensionSettings {
    const settings = { ...DEFAULT_SETTINGS };
    if (raw && typeof raw === 'object') {
        const candidate = raw as Record<string, unknown>;
        if (typeof candidate.serverBaseUrl === 'string') {
            try {
                new URL(candidate.serverBaseUrl);
                settings.serverBaseUrl = candidate.serverBaseUrl;
            } catch {
                // malformed URL: keep the default
            }
        }
        if (
            typeof candidate.requestTimeoutMs === 'number' &&
            Number.isFinite(candidate.requestTimeoutMs)
        ) {
            settings.requestTimeoutMs = Math.max(
                MIN_TIMEOUT_MS,
                Math.round(candidate.requestTimeoutMs),
            );
        }
    }
    return settings;
}

export async function loadSettings(storage: SettingsStorage): Promise<ExtensionSettings> {
    const stored = await storage.get([SETTINGS_KEY]);
    return sanitizeSettings(stored[SETTINGS_KEY]);
}

export async function saveSettings(
    storage: SettingsStorage,
    settings: ExtensionSettings,
): Promise<void> {
    await storage.set({ [SETTINGS_KEY]: sanitizeSettings(settings) });
}
