/**
 * Ordering model behind the drag list of translation priorities.
 *
 * The server is the source of truth: the model starts from the server's rank
 * order, tracks a drag as an index move, and either short-circuits (drop in
 * the original place sends nothing) or emits a permutation payload for the
 * order endpoint. After a successful commit, or after a rejected one
 * (concurrent edit), the list is reset from the server's response.
 */
import type { LinkPayload } from "./api.js";

export interface OrderedLink {
    id: string;
    targetLemma: string;
    domain: string | null;
}

export class LinkOrderModel {
    items: OrderedLink[];
    private original: string[];

    constructor(serverItems: LinkPayload[]) {
        this.items = serverItems.map((l) => ({
            id: l.id,
            targetLemma: l.target_lemma ?? "",
            domain: l.domain ?? null,
        }));
        this.original = this.items.map((l) => l.id);
    }

    /** Move the item at `from` so it sits at index `to`. */
    move(from: number, to: number): void {
        if (from === to || from < 0 || from >= this.items.length) {
            return;
        }
        const clamped = Math.max(0, Math.min(to, this.items.length - 1));
        const [item] = this.items.splice(from, 1);
        this.items.splice(clamped, 0, item);
    }

    isIdentity(): boolean {
        return this.items.every((item, i) => item.id === this.original[i]);
    }

    /** Permutation payload for the order endpoint, or null when nothing moved. */
    orderPayload(): { order: string[] } | null {
        if (this.isIdentity()) {
            return null;
        }
        return { order: this.items.map((l) => l.id) };
    }

    /** Re-adopt the server's order (after commit or conflict reload). */
    resetFrom(serverItems: LinkPayload[]): void {
        this.items = serverItems.map((l) => ({
            id: l.id,
            targetLemma: l.target_lemma ?? "",
            domain: l.domain ?? null,
        }));
        this.original = this.items.map((l) => l.id);
    }
}
