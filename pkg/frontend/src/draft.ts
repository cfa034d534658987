/**
 * In-progress entry state for the editor: which attribute controls a POS
 * shows, override bookkeeping keyed by canonical feature text, and the
 * payload sent to the preview/save endpoints. Field visibility mirrors the
 * server's validation rules so a lexicographer is never offered an attribute
 * the server would reject.
 */
import type { EntryPayload, FeatureMap, OverridePayload } from "./api.js";

export const LANGUAGES = ["EN", "LT"] as const;

export const POS_VALUES = [
    "noun", "verb", "adjective", "pronoun", "numeral", "adverb",
    "preposition", "conjunction", "particle", "interjection",
] as const;

export const NON_INFLECTING_POS = new Set([
    "preposition", "conjunction", "particle", "interjection",
]);

const FEATURE_ORDER = [
    "case", "number", "gender", "degree", "definiteness",
    "tense", "mood", "person", "vform", "voice",
];

export interface AttributeVisibility {
    inflectionClass: boolean;
    stems: boolean;
    gender: boolean;
    regular: boolean;
    defectiveness: boolean;
    domains: boolean;
    requiredCases: boolean;
    overrides: boolean;
}

export function visibleAttributes(pos: string): AttributeVisibility {
    const inflecting = !NON_INFLECTING_POS.has(pos);
    return {
        inflectionClass: inflecting,
        stems: true,
        gender: pos === "noun" || pos === "adjective",
        regular: pos === "verb",
        defectiveness: inflecting,
        domains: pos === "noun",
        requiredCases: pos === "preposition",
        overrides: inflecting,
    };
}

/** Canonical `key=value,...` text for a feature bundle, fixed feature order. */
export function canonicalFeatures(features: FeatureMap): string {
    return FEATURE_ORDER
        .filter((name) => features[name] !== undefined)
        .map((name) => `${name}=${features[name]}`)
        .join(",");
}

export class EntryDraft {
    id: string | null = null;
    language: string = "LT";
    pos: string = "noun";
    lemma = "";
    stems: string[] = [];
    inflectionClass: string | null = null;
    gender: string | null = null;
    regular: boolean | null = null;
    defectiveness = "none";
    domainTags: string[] = [];
    requiredCases: string[] = [];
    private overrides = new Map<string, { features: FeatureMap; surface: string }>();

    static fromPayload(payload: EntryPayload): EntryDraft {
        const draft = new EntryDraft();
        draft.id = payload.id ?? null;
        draft.language = payload.language;
        draft.pos = payload.pos;
        draft.lemma = payload.lemma;
        draft.stems = [...payload.stems];
        draft.inflectionClass = payload.inflection_class ?? null;
        draft.gender = payload.gender ?? null;
        draft.regular = payload.regular ?? null;
        draft.defectiveness = payload.defectiveness ?? "none";
        draft.domainTags = [...(payload.domain_tags ?? [])];
        draft.requiredCases = [...(payload.required_cases ?? [])];
        for (const o of payload.overrides ?? []) {
            draft.setOverride(o.features, o.surface);
        }
        return draft;
    }

    setOverride(features: FeatureMap, surface: string): void {
        const key = canonicalFeatures(features);
        if (surface === "") {
            this.overrides.delete(key);
        } else {
            this.overrides.set(key, { features, surface });
        }
    }

    clearOverride(features: FeatureMap): void {
        this.overrides.delete(canonicalFeatures(features));
    }

    overrideFor(features: FeatureMap): string | undefined {
        return this.overrides.get(canonicalFeatures(features))?.surface;
    }

    overrideCount(): number {
        return this.overrides.size;
    }

    /**
     * Payload for preview/save. Empty stems fall back to the lemma so a
     * lexicographer sees a preview as soon as a lemma is typed.
     */
    toPayload(): EntryPayload {
        const visible = visibleAttributes(this.pos);
        const stems = this.stems.filter((s) => s.trim() !== "");
        const payload: EntryPayload = {
            language: this.language,
            pos: this.pos,
            lemma: this.lemma,
            stems: stems.length > 0 ? stems : [this.lemma],
        };
        if (this.id) {
            payload.id = this.id;
        }
        if (visible.inflectionClass && this.inflectionClass) {
            payload.inflection_class = this.inflectionClass;
        }
        if (visible.gender && this.gender) {
            payload.gender = this.gender;
        }
        if (visible.regular && this.regular !== null) {
            payload.regular = this.regular;
        }
        if (visible.defectiveness && this.defectiveness !== "none") {
            payload.defectiveness = this.defectiveness;
        }
        if (visible.domains && this.domainTags.length > 0) {
            payload.domain_tags = [...this.domainTags];
        }
        if (visible.requiredCases && this.requiredCases.length > 0) {
            payload.required_cases = [...this.requiredCases];
        }
        if (visible.overrides && this.overrides.size > 0) {
            const items: OverridePayload[] = [...this.overrides.entries()]
                .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
                .map(([, o]) => ({ features: o.features, surface: o.surface }));
            payload.overrides = items;
        }
        return payload;
    }
}
