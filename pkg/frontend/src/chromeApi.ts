// Structural view of the Chrome extension APIs this extension touches.
// The real `chrome` global satisfies it at runtime; tests pass a fake.

export interface ContextMenuClickInfo {
    menuItemId: string | number;
    selectionText?: string;
}

export interface TabInfo {
    url?: string;
}

export interface StorageArea {
    get(keys: string[]): Promise<Record<string, unknown>>;
    set(items: Record<string, unknown>): Promise<void>;
}

export interface ChromeLike {
    contextMenus: {
        create(properties: { id: string; title: string; contexts: string[] }): void;
        onClicked: {
            addListener(
                listener: (info: ContextMenuClickInfo, tab?: TabInfo) => void | Promise<void>,
            ): void;
        };
    };
    runtime: {
        onInstalled: { addListener(listener: () => void): void };
    };
    storage: {
        sync: StorageArea;
        local: StorageArea;
        onChanged: { addListener(listener: () => void): void };
    };
}

export function getChrome(): ChromeLike | undefined {
    return (globalThis as { chrome?: ChromeLike }).chrome;
}
