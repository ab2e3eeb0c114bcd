import type { PatchJson, PatchStatus, VotePosition } from "../api/types";

/**
 * Local mirror of the server's vote semantics, used for optimistic updates.
 * An agent holds at most one position, so the sets stay disjoint by
 * construction; the server response replaces this guess on reconcile.
 */
export function applyVote(patch: PatchJson, agent: string, position: VotePosition): PatchJson {
  const advocates = new Set(patch.advocates);
  const criticisers = new Set(patch.criticisers);
  advocates.delete(agent);
  criticisers.delete(agent);
  if (position === "advocate") advocates.add(agent);
  if (position === "criticise") criticisers.add(agent);
  return {
    ...patch,
    advocates: [...advocates].sort(),
    criticisers: [...criticisers].sort(),
  };
}

export function applyStatus(patch: PatchJson, status: PatchStatus): PatchJson {
  return { ...patch, status };
}
