import type { PairJson, PatchJson, PatchStatus } from "../api/types";
import { shortenIri, termText } from "./format";

export interface PatchSummaryView {
  id: string;
  datasetLabel: string;
  typeBadges: string[];
  status: PatchStatus;
  advocateCount: number;
  criticiserCount: number;
  latestTimestamp: string | null;
  instructionLine: string;
}

function opText(sign: string, subject: string, pair: PairJson): string {
  return `${sign} ${subject} ${shortenIri(pair.predicate)} ${termText(pair.object)}`;
}

/** One line per instruction, deletions before insertions. */
export function instructionLine(patch: PatchJson): string {
  const subject = shortenIri(patch.update.targetSubject);
  const parts = [
    ...patch.update.deletions.map((pair) => opText("−", subject, pair)),
    ...patch.update.insertions.map((pair) => opText("+", subject, pair)),
  ];
  return parts.join("; ");
}

export function latestTimestamp(patch: PatchJson): string | null {
  let latest: string | null = null;
  for (const event of patch.provenance) {
    // normalized UTC timestamps compare correctly as strings
    if (latest === null || event.performedAt > latest) latest = event.performedAt;
  }
  return latest;
}

export function toSummaryView(
  patch: PatchJson,
  datasetLabels: Record<string, string> = {},
): PatchSummaryView {
  return {
    id: patch.id ?? "",
    datasetLabel: datasetLabels[patch.dataset] ?? shortenIri(patch.dataset),
    typeBadges: patch.types.map((t) => t.name),
    status: patch.status,
    advocateCount: patch.advocates.length,
    criticiserCount: patch.criticisers.length,
    latestTimestamp: latestTimestamp(patch),
    instructionLine: instructionLine(patch),
  };
}
