import { useQuery } from "@tanstack/react-query";
import {
  fetchDatasets,
  fetchEntities,
  fetchEntityPatches,
  fetchGroups,
  fetchPatch,
  fetchPatches,
  fetchPatchSparql,
  fetchReport,
  fetchServiceInfo,
} from "../api/client";
import type { Dialect, PatchFilters } from "../api/types";

export const patchKeys = {
  all: ["patches"] as const,
  list: (filters: PatchFilters) => [...patchKeys.all, "list", filters] as const,
  detail: (id: string) => [...patchKeys.all, "detail", id] as const,
  sparql: (id: string, dialect: Dialect, header: boolean) =>
    [...patchKeys.all, "sparql", id, dialect, header] as const,
};

export const reportKeys = {
  all: ["reports"] as const,
  report: (kind: "popular" | "recent") => [...reportKeys.all, kind] as const,
};

export const entityKeys = {
  all: ["entities"] as const,
  list: () => [...entityKeys.all, "list"] as const,
  subject: (iri: string) => [...entityKeys.all, "subject", iri] as const,
};

export function useServiceInfo() {
  return useQuery({
    queryKey: ["service-info"],
    queryFn: fetchServiceInfo,
    refetchInterval: 15 * 1000,
    retry: 1,
  });
}

export function usePatchList(filters: PatchFilters) {
  return useQuery({
    queryKey: patchKeys.list(filters),
    queryFn: () => fetchPatches(filters),
  });
}

export function usePatch(id: string) {
  return useQuery({
    queryKey: patchKeys.detail(id),
    queryFn: () => fetchPatch(id),
    enabled: !!id,
  });
}

export function usePatchSparql(id: string, dialect: Dialect, header: boolean) {
  return useQuery({
    queryKey: patchKeys.sparql(id, dialect, header),
    queryFn: () => fetchPatchSparql(id, dialect, header),
    enabled: !!id,
  });
}

export function useReport(kind: "popular" | "recent") {
  return useQuery({
    queryKey: reportKeys.report(kind),
    queryFn: () => fetchReport(kind),
  });
}

export function useEntities() {
  return useQuery({
    queryKey: entityKeys.list(),
    queryFn: () => fetchEntities(),
  });
}

export function useEntityPatches(subject: string) {
  return useQuery({
    queryKey: entityKeys.subject(subject),
    queryFn: () => fetchEntityPatches(subject),
    enabled: !!subject,
  });
}

export function useDatasets() {
  return useQuery({ queryKey: ["datasets"], queryFn: fetchDatasets });
}

export function useGroups() {
  return useQuery({ queryKey: ["groups"], queryFn: fetchGroups });
}
