import type {
  DatasetRow,
  Dialect,
  EntityRow,
  GroupRow,
  PatchFilters,
  PatchJson,
  PatchPage,
  PatchStatus,
  ServiceInfo,
  VotePosition,
} from "./types";

export class ApiError extends Error {
  constructor(message: string, public status: number, public code: string = "Error") {
    super(message);
    this.name = "ApiError";
  }
}

let baseUrl = "";

export function configureApi(url: string): void {
  baseUrl = url.replace(/\/+$/, "");
}

export function apiBase(): string {
  return baseUrl;
}

const JSON_HEADERS = { "Content-Type": "application/json" } as const;

async function request(path: string, options?: RequestInit): Promise<Response> {
  const response = await fetch(baseUrl + path, options);
  if (!response.ok) {
    // error envelope: {"error": code, "message": text}
    const body = await response.json().catch(() => ({}));
    const code = typeof body.error === "string" ? body.error : "Error";
    const message =
      typeof body.message === "string" ? body.message : response.statusText || "request failed";
    throw new ApiError(message, response.status, code);
  }
  return response;
}

async function fetchJson<T>(path: string, options?: RequestInit): Promise<T> {
  const response = await request(path, options);
  return response.json() as Promise<T>;
}

async function fetchText(path: string): Promise<string> {
  const response = await request(path);
  return response.text();
}

function patchPath(id: string, rest = ""): string {
  return `/patches/${encodeURIComponent(id)}${rest}`;
}

export function filterParams(filters: PatchFilters): URLSearchParams {
  const params = new URLSearchParams();
  if (filters.dataset) params.set("dataset", filters.dataset);
  if (filters.status) params.set("status", filters.status);
  for (const name of filters.types ?? []) params.append("type", name);
  if (filters.subject) params.set("subject", filters.subject);
  if (filters.minAdvocates !== undefined) params.set("minAdvocates", String(filters.minAdvocates));
  if (filters.agent) params.set("agent", filters.agent);
  if (filters.group) params.set("group", filters.group);
  if (filters.order) params.set("order", filters.order);
  if (filters.limit !== undefined) params.set("limit", String(filters.limit));
  if (filters.offset !== undefined) params.set("offset", String(filters.offset));
  return params;
}

export function fetchServiceInfo(): Promise<ServiceInfo> {
  return fetchJson<ServiceInfo>("/");
}

export function fetchPatches(filters: PatchFilters = {}): Promise<PatchPage> {
  const params = filterParams(filters);
  const query = params.size > 0 ? `?${params}` : "";
  return fetchJson<PatchPage>(`/patches${query}`);
}

export function fetchPatch(id: string): Promise<PatchJson> {
  return fetchJson<PatchJson>(patchPath(id));
}

export function fetchPatchSparql(id: string, dialect: Dialect, header: boolean): Promise<string> {
  const params = new URLSearchParams({ dialect, header: String(header) });
  return fetchText(patchPath(id, `/sparql?${params}`));
}

export function castVote(id: string, agent: string, position: VotePosition): Promise<PatchJson> {
  return fetchJson<PatchJson>(patchPath(id, "/votes"), {
    method: "POST",
    headers: JSON_HEADERS,
    body: JSON.stringify({ agent, position }),
  });
}

export function changeStatus(
  id: string,
  status: PatchStatus,
  actor?: string,
): Promise<PatchJson> {
  return fetchJson<PatchJson>(patchPath(id, "/status"), {
    method: "POST",
    headers: JSON_HEADERS,
    body: JSON.stringify(actor ? { status, actor } : { status }),
  });
}

export async function fetchReport(
  kind: "popular" | "recent",
  limit = 25,
  dataset?: string,
): Promise<PatchJson[]> {
  const params = new URLSearchParams({ limit: String(limit) });
  if (dataset) params.set("dataset", dataset);
  const body = await fetchJson<{ patches: PatchJson[] }>(`/reports/${kind}?${params}`);
  return body.patches;
}

export async function fetchEntities(dataset?: string): Promise<EntityRow[]> {
  const params = new URLSearchParams();
  if (dataset) params.set("dataset", dataset);
  const query = params.size > 0 ? `?${params}` : "";
  const body = await fetchJson<{ entities: EntityRow[] }>(`/entities${query}`);
  return body.entities;
}

export async function fetchEntityPatches(subject: string): Promise<PatchJson[]> {
  const params = new URLSearchParams({ subject });
  const body = await fetchJson<{ subject: string; patches: PatchJson[] }>(`/entities?${params}`);
  return body.patches;
}

export async function fetchDatasets(): Promise<DatasetRow[]> {
  const body = await fetchJson<{ datasets: DatasetRow[] }>("/datasets");
  return body.datasets;
}

export async function fetchGroups(): Promise<GroupRow[]> {
  const body = await fetchJson<{ groups: GroupRow[] }>("/groups");
  return body.groups;
}

export function fetchDatasetUpdates(
  iri: string,
  dialect: Dialect,
  minAdvocates?: number,
): Promise<string> {
  const params = new URLSearchParams({ dialect });
  if (minAdvocates !== undefined) params.set("minAdvocates", String(minAdvocates));
  return fetchText(`/datasets/${encodeURIComponent(iri)}/updates?${params}`);
}
