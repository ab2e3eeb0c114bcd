import { describe, expect, it } from "vitest";
import type { PatchJson, VotePosition } from "../../src/api/types";
import { applyVote } from "../../src/lib/votes";

function ballot(advocates: string[], criticisers: string[]): PatchJson {
  return {
    id: "http://example.org/repo/patch/3",
    update: {
      targetGraph: "http://dbpedia.org/",
      targetSubject: "http://dbpedia.org/resource/Oregon",
      insertions: [],
      deletions: [],
    },
    dataset: "http://dbpedia.org/void.ttl#DBpedia",
    types: [],
    status: "active",
    advocates,
    criticisers,
    groups: [],
    comment: null,
    provenance: [],
  };
}

const POSITIONS: VotePosition[] = ["advocate", "criticise", "withdrawn"];

describe("applyVote", () => {
  it("moves an advocating agent to the criticiser side", () => {
    const after = applyVote(ballot(["a", "b"], []), "a", "criticise");
    expect(after.advocates).toEqual(["b"]);
    expect(after.criticisers).toEqual(["a"]);
  });

  it("withdrawing removes the agent from both sides", () => {
    const after = applyVote(ballot(["a"], ["b"]), "a", "withdrawn");
    expect(after.advocates).toEqual([]);
    expect(after.criticisers).toEqual(["b"]);
  });

  it("repeating a position is a no-op", () => {
    const once = applyVote(ballot([], []), "a", "advocate");
    const twice = applyVote(once, "a", "advocate");
    expect(twice.advocates).toEqual(once.advocates);
    expect(twice.criticisers).toEqual(once.criticisers);
  });

  it("keeps the sets disjoint for every starting side and position", () => {
    const starts = [
      ballot([], []),
      ballot(["x"], []),
      ballot([], ["x"]),
      ballot(["x", "y"], ["z"]),
    ];
    for (const start of starts) {
      for (const position of POSITIONS) {
        const after = applyVote(start, "x", position);
        const overlap = after.advocates.filter((a) => after.criticisers.includes(a));
        expect(overlap).toEqual([]);
        // everyone else's vote is untouched
        expect(after.advocates.filter((a) => a !== "x")).toEqual(
          start.advocates.filter((a) => a !== "x"),
        );
        expect(after.criticisers.filter((a) => a !== "x")).toEqual(
          start.criticisers.filter((a) => a !== "x"),
        );
      }
    }
  });
});
