import { describe, expect, it } from "vitest";
import { patchSourceLinks, sourceLink } from "../../src/lib/links";
import type { PatchJson } from "../../src/api/types";

describe("sourceLink", () => {
  it("maps a DBpedia resource to its English Wikipedia page", () => {
    const link = sourceLink("http://dbpedia.org/resource/Oregon");
    expect(link).toEqual({
      dbpediaPage: "http://dbpedia.org/resource/Oregon",
      wikipediaPage: "https://en.wikipedia.org/wiki/Oregon",
    });
  });

  it("keeps underscores and percent escapes untouched", () => {
    expect(sourceLink("http://dbpedia.org/resource/English_language")?.wikipediaPage).toBe(
      "https://en.wikipedia.org/wiki/English_language",
    );
    expect(sourceLink("http://dbpedia.org/resource/Caf%C3%A9")?.wikipediaPage).toBe(
      "https://en.wikipedia.org/wiki/Caf%C3%A9",
    );
  });

  it("emits nothing outside the DBpedia resource namespace", () => {
    expect(sourceLink("http://dbpedia.org/ontology/language")).toBeNull();
    expect(sourceLink("http://example.org/Oregon")).toBeNull();
    expect(sourceLink("http://dbpedia.org/resource/")).toBeNull();
  });
});

describe("patchSourceLinks", () => {
  function withSubject(subject: string): PatchJson {
    return {
      id: "http://example.org/repo/patch/9",
      update: { targetGraph: "http://dbpedia.org/", targetSubject: subject, insertions: [], deletions: [] },
      dataset: "http://dbpedia.org/void.ttl#DBpedia",
      types: [],
      status: "active",
      advocates: [],
      criticisers: [],
      groups: [],
      comment: null,
      provenance: [],
    };
  }

  it("links the target subject when it is a DBpedia resource", () => {
    const links = patchSourceLinks(withSubject("http://dbpedia.org/resource/Utah"));
    expect(links.map((l) => l.wikipediaPage)).toEqual(["https://en.wikipedia.org/wiki/Utah"]);
  });

  it("is empty for subjects without a known source page", () => {
    expect(patchSourceLinks(withSubject("http://example.org/thing"))).toEqual([]);
  });
});
