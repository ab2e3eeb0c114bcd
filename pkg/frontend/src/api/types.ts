// JSON shapes exchanged with the patch repository service.

export type TermJson =
  | { type: "iri"; value: string }
  | { type: "bnode"; label: string }
  | { type: "literal"; value: string; datatype?: string; language?: string };

export interface PairJson {
  predicate: string;
  object: TermJson;
}

export interface InstructionJson {
  targetGraph: string;
  targetSubject: string;
  insertions: PairJson[];
  deletions: PairJson[];
}

export interface ProvenanceJson {
  performedBy: string;
  involvedActor: string | null;
  performedAt: string;
}

export type PatchStatus = "active" | "resolved" | "rejected";

export interface PatchTypeJson {
  iri: string;
  name: string;
}

export interface PatchJson {
  id: string | null;
  update: InstructionJson;
  dataset: string;
  types: PatchTypeJson[];
  status: PatchStatus;
  advocates: string[];
  criticisers: string[];
  groups: string[];
  comment: string | null;
  provenance: ProvenanceJson[];
}

export interface PatchPage {
  total: number;
  offset: number;
  patches: PatchJson[];
}

export interface EntityRow {
  subject: string;
  patches: number;
}

export interface DatasetRow {
  iri: string;
  label: string;
  patches: number;
}

export interface GroupRow {
  id: string;
  label: string | null;
  comment: string | null;
}

export interface ServiceInfo {
  service: string;
  repoBase: string;
  patches: number;
  datasets: Record<string, string>;
}

export type VotePosition = "advocate" | "criticise" | "withdrawn";

export type Ordering = "recent" | "popular";

export type Dialect = "sparql-1.1" | "legacy";

export const PATCH_TYPE_NAMES = [
  "wrong-fact",
  "missing-fact",
  "encoding-error",
  "datatype-error",
] as const;

export interface PatchFilters {
  dataset?: string;
  status?: PatchStatus;
  types?: string[];
  subject?: string;
  minAdvocates?: number;
  agent?: string;
  group?: string;
  order?: Ordering;
  limit?: number;
  offset?: number;
}
