/**
 * Workbench UI wiring. Pure DOM, no framework: each tab owns a render
 * function over a small amount of state; all data comes from the ApiClient.
 * Failed requests surface in a banner with a retry of the exact operation,
 * and the in-progress draft is never thrown away on failure.
 */
import { ApiClient, ApiError, EntryPayload, LinkPayload, ParadigmClassInfo } from "./api.js";
import { EntryDraft, LANGUAGES, POS_VALUES, visibleAttributes } from "./draft.js";
import { buildParadigmGrid } from "./grid.js";
import { LinkOrderModel } from "./linkorder.js";

const baseUrl = localStorage.getItem("lexibase-api") ?? "";
const api = new ApiClient(baseUrl);

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K, attrs: Record<string, string> = {}, ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [k, v] of Object.entries(attrs)) {
        if (k === "class") {
            node.className = v;
        } else {
            node.setAttribute(k, v);
        }
    }
    node.append(...children);
    return node;
}

function byId<T extends HTMLElement>(id: string): T {
    return document.getElementById(id) as T;
}

// ------------------------------------------------------------ error banner

let lastFailed: (() => Promise<void>) | null = null;

function showError(err: unknown, retry?: () => Promise<void>): void {
    const banner = byId<HTMLDivElement>("banner");
    banner.classList.remove("hidden");
    const message = err instanceof ApiError
        ? `${err.code}: ${err.message}${err.field ? ` (field: ${err.field})` : ""}`
        : String(err);
    byId<HTMLSpanElement>("banner-text").textContent = message;
    lastFailed = retry ?? null;
    byId<HTMLButtonElement>("banner-retry").classList.toggle("hidden", !retry);
}

function clearError(): void {
    byId<HTMLDivElement>("banner").classList.add("hidden");
    lastFailed = null;
}

async function guarded(op: () => Promise<void>): Promise<void> {
    try {
        await op();
        clearError();
    } catch (err) {
        showError(err, op);
    }
}

// ------------------------------------------------------------- entries tab

const draft = new EntryDraft();
let classes: ParadigmClassInfo[] = [];
let previewTimer: number | undefined;

function schedulePreview(): void {
    window.clearTimeout(previewTimer);
    previewTimer = window.setTimeout(() => void refreshPreview(), 250);
}

async function loadClasses(): Promise<void> {
    classes = (await api.paradigmClasses()).items;
    renderClassOptions();
}

function renderClassOptions(): void {
    const select = byId<HTMLSelectElement>("f-class");
    const current = draft.inflectionClass;
    select.innerHTML = "";
    const usable = classes.filter(
        (c) => c.language === draft.language && c.pos === draft.pos);
    select.append(el("option", { value: "" }, "(pick a class)"));
    for (const c of usable) {
        const opt = el("option", { value: c.inflection_class },
            `${c.inflection_class} (${c.slots} forms)`);
        if (c.inflection_class === current) {
            opt.selected = true;
        }
        select.append(opt);
    }
}

function renderAttributeVisibility(): void {
    const visible = visibleAttributes(draft.pos);
    byId("row-class").classList.toggle("hidden", !visible.inflectionClass);
    byId("row-gender").classList.toggle("hidden", !visible.gender);
    byId("row-regular").classList.toggle("hidden", !visible.regular);
    byId("row-defective").classList.toggle("hidden", !visible.defectiveness);
    byId("row-domains").classList.toggle("hidden", !visible.domains);
    byId("row-cases").classList.toggle("hidden", !visible.requiredCases);
}

async function refreshPreview(): Promise<void> {
    const host = byId<HTMLDivElement>("preview");
    if (!draft.lemma || (visibleAttributes(draft.pos).inflectionClass && !draft.inflectionClass)) {
        host.replaceChildren(el("p", { class: "hint" },
            "Pick language, part of speech, class, and type a lemma to preview."));
        return;
    }
    await guarded(async () => {
        const response = await api.preview(draft.toPayload());
        const grid = buildParadigmGrid(response.forms);
        host.replaceChildren();
        byId("preview-count").textContent =
            `${response.count} forms · ${draft.overrideCount()} overrides`;
        if (grid.cellCount !== response.count) {
            throw new Error(`grid lost forms: ${grid.cellCount} cells for ${response.count}`);
        }
        for (const section of grid.sections) {
            if (section.title) {
                host.append(el("h4", {}, section.title));
            }
            const table = el("table", { class: "grid" });
            if (section.cols.length > 1 || section.cols[0] !== "—") {
                const head = el("tr", {}, el("th", {}, section.rowFeature ?? ""));
                for (const col of section.cols) {
                    head.append(el("th", {}, col));
                }
                table.append(head);
            }
            for (const row of section.rows) {
                const tr = el("tr", {}, el("th", {}, row));
                for (const col of section.cols) {
                    const cell = section.cellAt(row, col);
                    const td = el("td", { class: "cell" });
                    if (cell) {
                        td.append(el("span", {
                            class: cell.origin === "OVERRIDE" ? "surface override" : "surface",
                            title: cell.origin === "OVERRIDE"
                                ? "irregular override — click to edit"
                                : "generated — click to override",
                        }, cell.surface));
                        td.addEventListener("click", () => {
                            const replacement = window.prompt(
                                "Surface for this cell (empty restores the generated form):",
                                cell.surface);
                            if (replacement === null) {
                                return;
                            }
                            draft.setOverride(cell.features, replacement.trim());
                            void refreshPreview();
                        });
                    }
                    tr.append(td);
                }
                table.append(tr);
            }
            host.append(table);
        }
    });
}

function readDraftFromForm(): void {
    draft.language = byId<HTMLSelectElement>("f-lang").value;
    draft.pos = byId<HTMLSelectElement>("f-pos").value;
    draft.lemma = byId<HTMLInputElement>("f-lemma").value.trim();
    draft.stems = byId<HTMLInputElement>("f-stems").value
        .split(",").map((s) => s.trim()).filter((s) => s !== "");
    draft.inflectionClass = byId<HTMLSelectElement>("f-class").value || null;
    draft.gender = byId<HTMLSelectElement>("f-gender").value || null;
    const regular = byId<HTMLSelectElement>("f-regular").value;
    draft.regular = regular === "" ? null : regular === "yes";
    draft.defectiveness = byId<HTMLSelectElement>("f-defective").value;
    draft.domainTags = byId<HTMLInputElement>("f-domains").value
        .split(",").map((s) => s.trim()).filter((s) => s !== "");
    draft.requiredCases = byId<HTMLInputElement>("f-cases").value
        .split(",").map((s) => s.trim().toUpperCase()).filter((s) => s !== "");
}

async function saveEntry(): Promise<void> {
    await guarded(async () => {
        const payload = draft.toPayload();
        const saved = draft.id
            ? await api.updateEntry(draft.id, payload)
            : await api.createEntry(payload);
        draft.id = saved.id ?? null;
        byId("save-note").textContent =
            `saved as ${saved.id} · ${new Date().toLocaleTimeString()}`;
        await refreshPreview();
        await refreshEntryList();
    });
}

async function refreshEntryList(): Promise<void> {
    const prefix = byId<HTMLInputElement>("entry-search").value.trim();
    const lang = byId<HTMLSelectElement>("entry-search-lang").value;
    const listHost = byId<HTMLUListElement>("entry-list");
    await guarded(async () => {
        const { lemmas } = await api.search(prefix, lang, 30);
        listHost.replaceChildren();
        for (const lemma of lemmas) {
            const item = el("li", { class: "entry-item" }, lemma);
            item.addEventListener("click", () => void openEntryByLemma(lemma, lang));
            listHost.append(item);
        }
    });
}

async function openEntryByLemma(lemma: string, lang: string): Promise<void> {
    const { items } = await api.listEntries({ lang, limit: 1000 });
    const found = items.find((e) => e.lemma === lemma);
    if (found?.id) {
        await openEntry(found.id);
    }
}

async function openEntry(id: string): Promise<void> {
    await guarded(async () => {
        const payload = await api.getEntry(id);
        const loaded = EntryDraft.fromPayload(payload);
        Object.assign(draft, loaded);
        byId<HTMLSelectElement>("f-lang").value = draft.language;
        byId<HTMLSelectElement>("f-pos").value = draft.pos;
        byId<HTMLInputElement>("f-lemma").value = draft.lemma;
        byId<HTMLInputElement>("f-stems").value = draft.stems.join(",");
        byId<HTMLSelectElement>("f-gender").value = draft.gender ?? "";
        byId<HTMLSelectElement>("f-regular").value =
            draft.regular === null ? "" : draft.regular ? "yes" : "no";
        byId<HTMLSelectElement>("f-defective").value = draft.defectiveness;
        byId<HTMLInputElement>("f-domains").value = draft.domainTags.join(",");
        byId<HTMLInputElement>("f-cases").value = draft.requiredCases.join(",");
        renderAttributeVisibility();
        renderClassOptions();
        byId("save-note").textContent = `editing ${id}`;
        await refreshPreview();
        await loadLinksPanel(id);
    });
}

// --------------------------------------------------------------- links tab

let linkModel: LinkOrderModel | null = null;
let linkEntryId: string | null = null;
let linkDirection = "en-lt";
let dragIndex = -1;

async function loadLinksPanel(entryId: string): Promise<void> {
    linkEntryId = entryId;
    const entry = await api.getEntry(entryId);
    linkDirection = entry.language === "EN" ? "en-lt" : "lt-en";
    byId("links-entry").textContent =
        `${entry.lemma} (${entry.language} ${entry.pos}) — ${linkDirection}`;
    const { items } = await api.entryLinks(entryId, linkDirection);
    linkModel = new LinkOrderModel(items);
    renderLinkList();
}

function renderLinkList(): void {
    const host = byId<HTMLOListElement>("link-list");
    host.replaceChildren();
    if (!linkModel) {
        return;
    }
    linkModel.items.forEach((item, index) => {
        const li = el("li", { class: "link-item", draggable: "true" },
            el("span", { class: "drag-handle" }, "☰ "),
            el("span", {}, `${index + 1}. ${item.targetLemma}`),
        );
        if (item.domain) {
            li.append(el("span", { class: "domain-badge" }, item.domain));
        }
        li.addEventListener("dragstart", () => { dragIndex = index; });
        li.addEventListener("dragover", (ev) => ev.preventDefault());
        li.addEventListener("drop", (ev) => {
            ev.preventDefault();
            if (dragIndex >= 0) {
                linkModel!.move(dragIndex, index);
                dragIndex = -1;
                renderLinkList();
                void commitLinkOrder();
            }
        });
        host.append(li);
    });
}

async function commitLinkOrder(): Promise<void> {
    if (!linkModel || !linkEntryId) {
        return;
    }
    const payload = linkModel.orderPayload();
    if (payload === null) {
        return; // dropped in the original place: no mutation issued
    }
    try {
        const { links } = await api.reorderLinks(linkEntryId, linkDirection, payload.order);
        linkModel.resetFrom(links.map((l) => ({
            ...l, target_lemma: linkModel!.items.find((i) => i.id === l.id)?.targetLemma,
        })));
        renderLinkList();
        clearError();
    } catch (err) {
        // concurrent edit: reload the server's order and say so
        const { items } = await api.entryLinks(linkEntryId, linkDirection);
        linkModel.resetFrom(items);
        renderLinkList();
        showError(err instanceof ApiError
            ? new ApiError(err.status, err.code,
                "another session changed this list; reloaded the server's order")
            : err);
    }
}

// -------------------------------------------------------------- search tab

async function runTranslate(): Promise<void> {
    const q = byId<HTMLInputElement>("t-query").value.trim();
    const dir = byId<HTMLSelectElement>("t-dir").value;
    const host = byId<HTMLDivElement>("t-results");
    await guarded(async () => {
        const { candidates } = await api.translate(q, dir, undefined, 50);
        host.replaceChildren();
        if (candidates.length === 0) {
            host.append(el("p", { class: "hint" }, "no translations"));
            return;
        }
        const list = el("ol", {});
        for (const c of candidates) {
            const li = el("li", {}, c.target_lemma);
            if (c.domain) {
                li.append(el("span", { class: "domain-badge" }, c.domain));
            }
            if (c.matched_as === "form" && c.matched_features) {
                li.append(el("span", { class: "hint" },
                    `  matched ${Object.entries(c.matched_features)
                        .map(([k, v]) => `${k}=${v}`).join(",")}`));
            }
            list.append(li);
        }
        host.append(list);
    });
}

// --------------------------------------------------------------- merge tab

async function runMerge(): Promise<void> {
    const left = byId<HTMLTextAreaElement>("m-left").value;
    const right = byId<HTMLTextAreaElement>("m-right").value;
    const policy = byId<HTMLSelectElement>("m-policy").value;
    const host = byId<HTMLDivElement>("m-report");
    await guarded(async () => {
        const result = await api.merge({ policy, left_text: left, right_text: right });
        host.replaceChildren(el("h4", {}, `${result.report.conflicts.length} conflicts`));
        for (const conflict of result.report.conflicts) {
            const block = el("div", { class: "conflict" },
                el("strong", {},
                    `${conflict.key.lemma} (${conflict.key.language} ${conflict.key.pos})`),
                el("span", { class: "hint" }, ` → ${conflict.resolution}`));
            const table = el("table", { class: "grid" },
                el("tr", {}, el("th", {}, "field"), el("th", {}, "left"),
                    el("th", {}, "right"), el("th", {}, "kept")));
            for (const diff of conflict.diffs) {
                table.append(el("tr", {},
                    el("td", {}, diff.field),
                    el("td", {}, JSON.stringify(diff.left)),
                    el("td", {}, JSON.stringify(diff.right)),
                    el("td", {}, JSON.stringify(diff.resolution))));
            }
            block.append(table);
            host.append(block);
        }
        if (result.merged_text) {
            const download = el("a", {
                href: URL.createObjectURL(new Blob([result.merged_text],
                    { type: "text/plain" })),
                download: "merged.interchange",
            }, "download merged interchange file");
            host.append(el("p", {}, download));
        }
    });
}

// ------------------------------------------------------------------- boot

function bind(): void {
    for (const tab of ["entries", "links", "search", "merge"]) {
        byId(`tab-${tab}`).addEventListener("click", () => {
            for (const other of ["entries", "links", "search", "merge"]) {
                byId(`panel-${other}`).classList.toggle("hidden", other !== tab);
                byId(`tab-${other}`).classList.toggle("active", other === tab);
            }
        });
    }

    const langSelect = byId<HTMLSelectElement>("f-lang");
    for (const lang of LANGUAGES) {
        langSelect.append(el("option", { value: lang }, lang));
    }
    langSelect.value = draft.language;
    const posSelect = byId<HTMLSelectElement>("f-pos");
    for (const pos of POS_VALUES) {
        posSelect.append(el("option", { value: pos }, pos));
    }
    posSelect.value = draft.pos;

    for (const id of ["f-lang", "f-pos", "f-class", "f-gender", "f-regular",
                      "f-defective"]) {
        byId(id).addEventListener("change", () => {
            readDraftFromForm();
            renderAttributeVisibility();
            renderClassOptions();
            schedulePreview();
        });
    }
    for (const id of ["f-lemma", "f-stems", "f-domains", "f-cases"]) {
        byId(id).addEventListener("input", () => {
            readDraftFromForm();
            schedulePreview();
        });
    }
    byId("save").addEventListener("click", () => void saveEntry());
    byId("new-entry").addEventListener("click", () => {
        draft.id = null;
        byId("save-note").textContent = "new entry";
    });
    byId("entry-search").addEventListener("input", () => void refreshEntryList());
    byId("entry-search-lang").addEventListener("change", () => void refreshEntryList());
    byId("t-run").addEventListener("click", () => void runTranslate());
    byId("m-run").addEventListener("click", () => void runMerge());
    byId("banner-retry").addEventListener("click", () => {
        if (lastFailed) {
            void guarded(lastFailed);
        }
    });
    byId("banner-close").addEventListener("click", clearError);

    renderAttributeVisibility();
    void loadClasses().then(() => refreshEntryList());
}

document.addEventListener("DOMContentLoaded", bind);
