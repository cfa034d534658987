/**
 * Typed client for the lexicon HTTP API. The workbench talks to the server
 * through this module only; no linguistic computation happens client-side,
 * every displayed form string originates from an API response.
 */

export type FeatureMap = Record<string, string>;

export interface GeneratedFormPayload {
    features: FeatureMap;
    surface: string;
    origin: "GENERATED" | "OVERRIDE";
}

export interface PreviewResponse {
    forms: GeneratedFormPayload[];
    count: number;
}

export interface OverridePayload {
    features: FeatureMap;
    surface: string;
}

export interface EntryPayload {
    id?: string;
    language: string;
    pos: string;
    lemma: string;
    stems: string[];
    inflection_class?: string;
    gender?: string;
    regular?: boolean;
    defectiveness?: string;
    domain_tags?: string[];
    overrides?: OverridePayload[];
    required_cases?: string[];
}

export interface LinkPayload {
    id: string;
    en_entry: string;
    lt_entry: string;
    rank_en_lt: number;
    rank_lt_en: number;
    domain?: string | null;
    note?: string | null;
    target_lemma?: string | null;
    rank?: number;
}

export interface DomainPayload {
    id: string;
    name: string;
}

export interface CandidatePayload {
    target_entry: string;
    target_lemma: string;
    rank: number;
    domain: string | null;
    via_link: string;
    matched_as: "lemma" | "form";
    matched_features?: FeatureMap;
}

export interface ParadigmClassInfo {
    language: string;
    pos: string;
    inflection_class: string;
    slots: number;
}

export interface StatsPayload {
    entries: number;
    links: number;
    domains: number;
    forms: Record<string, number>;
}

export interface MergeReportPayload {
    mode: string;
    conflicts: Array<{
        key: { language: string; pos: string; lemma: string; inflection_class: string | null };
        diffs: Array<{ field: string; left: unknown; right: unknown; resolution: unknown }>;
        resolution: string;
    }>;
}

export class ApiError extends Error {
    constructor(
        public status: number,
        public code: string,
        message: string,
        public field?: string,
        public details?: Array<{ code: string; message: string; field: string | null }>,
    ) {
        super(message);
        this.name = "ApiError";
    }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
    constructor(
        public baseUrl: string = "",
        private fetchImpl: FetchLike = (input, init) => fetch(input, init),
    ) {}

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        let res: Response;
        try {
            res = await this.fetchImpl(this.baseUrl + path, {
                method,
                headers: body !== undefined ? { "content-type": "application/json" } : undefined,
                body: body !== undefined ? JSON.stringify(body) : undefined,
            });
        } catch (err) {
            throw new ApiError(0, "NETWORK", `cannot reach server: ${String(err)}`);
        }
        if (res.status === 204) {
            return undefined as T;
        }
        const text = await res.text();
        let data: any = null;
        if (text) {
            try {
                data = JSON.parse(text);
            } catch {
                data = text;
            }
        }
        if (!res.ok) {
            const err = data && typeof data === "object" ? data.error : null;
            throw new ApiError(
                res.status,
                err?.code ?? "HTTP_" + res.status,
                err?.message ?? `request failed with status ${res.status}`,
                err?.field,
                err?.details,
            );
        }
        return data as T;
    }

    private query(params: Record<string, string | number | undefined | null>): string {
        const usp = new URLSearchParams();
        for (const [key, value] of Object.entries(params)) {
            if (value !== undefined && value !== null && value !== "") {
                usp.set(key, String(value));
            }
        }
        const qs = usp.toString();
        return qs ? "?" + qs : "";
    }

    preview(draft: EntryPayload): Promise<PreviewResponse> {
        return this.request("POST", "/paradigm/preview", draft);
    }

    paradigmClasses(lang?: string, pos?: string): Promise<{ items: ParadigmClassInfo[] }> {
        return this.request("GET", "/paradigm/classes" + this.query({ lang, pos }));
    }

    createEntry(draft: EntryPayload): Promise<EntryPayload> {
        return this.request("POST", "/entries", draft);
    }

    updateEntry(id: string, draft: EntryPayload): Promise<EntryPayload> {
        return this.request("PUT", `/entries/${encodeURIComponent(id)}`, draft);
    }

    getEntry(id: string): Promise<EntryPayload> {
        return this.request("GET", `/entries/${encodeURIComponent(id)}`);
    }

    deleteEntry(id: string, cascade = false): Promise<{ deleted: string; removed_links: string[] }> {
        return this.request(
            "DELETE",
            `/entries/${encodeURIComponent(id)}` + this.query({ cascade: cascade ? "true" : "" }),
        );
    }

    listEntries(params: { lang?: string; pos?: string; limit?: number; offset?: number }):
        Promise<{ items: EntryPayload[]; total: number }> {
        return this.request("GET", "/entries" + this.query(params));
    }

    search(prefix: string, lang: string, limit = 20): Promise<{ lemmas: string[] }> {
        return this.request("GET", "/search" + this.query({ prefix, lang, limit }));
    }

    translate(q: string, dir: string, domain?: string, limit?: number):
        Promise<{ candidates: CandidatePayload[] }> {
        return this.request("GET", "/translate" + this.query({ q, dir, domain, limit }));
    }

    analyze(q: string, lang: string):
        Promise<{ hits: Array<{ entry: string; lemma: string; features: FeatureMap }> }> {
        return this.request("GET", "/analyze" + this.query({ q, lang }));
    }

    domains(): Promise<{ items: DomainPayload[] }> {
        return this.request("GET", "/domains");
    }

    createDomain(name: string): Promise<DomainPayload> {
        return this.request("POST", "/domains", { name });
    }

    createLink(enEntry: string, ltEntry: string, domain?: string): Promise<LinkPayload> {
        return this.request("POST", "/links", {
            en_entry: enEntry, lt_entry: ltEntry, domain: domain || undefined,
        });
    }

    deleteLink(id: string): Promise<void> {
        return this.request("DELETE", `/links/${encodeURIComponent(id)}`);
    }

    entryLinks(entryId: string, dir: string): Promise<{ items: LinkPayload[] }> {
        return this.request(
            "GET", `/entries/${encodeURIComponent(entryId)}/links` + this.query({ dir }));
    }

    reorderLinks(entryId: string, dir: string, order: string[]):
        Promise<{ links: LinkPayload[] }> {
        return this.request(
            "PUT",
            `/entries/${encodeURIComponent(entryId)}/links/order` + this.query({ dir }),
            { order },
        );
    }

    merge(body: {
        policy: string;
        left_text?: string; right_text?: string;
        left_path?: string; right_path?: string;
        out_path?: string;
    }): Promise<{ report: MergeReportPayload; merged_text?: string; stats?: StatsPayload }> {
        return this.request("POST", "/merge", body);
    }

    stats(): Promise<StatsPayload> {
        return this.request("GET", "/stats");
    }

    exportText(): Promise<string> {
        return this.request("GET", "/export");
    }
}
