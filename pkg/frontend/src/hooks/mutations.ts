import { useMutation, useQueryClient } from "@tanstack/react-query";
import { castVote, changeStatus } from "../api/client";
import type { PatchJson, PatchStatus, VotePosition } from "../api/types";
import { applyStatus, applyVote } from "../lib/votes";
import { rolledBack, useToasts } from "../components/Toasts";
import { entityKeys, patchKeys, reportKeys } from "./queries";

interface VoteInput {
  id: string;
  agent: string;
  position: VotePosition;
}

interface StatusInput {
  id: string;
  status: PatchStatus;
  actor?: string;
}

/**
 * Optimistic mutation pair: guess the outcome locally, then reconcile the
 * cache to whatever the server answered. Failures restore the snapshot and
 * surface a toast; 409s say explicitly that the change was rolled back.
 */
function useOptimisticPatch<Input extends { id: string }>(
  mutate: (input: Input) => Promise<PatchJson>,
  guess: (before: PatchJson, input: Input) => PatchJson,
) {
  const queryClient = useQueryClient();
  const { push } = useToasts();

  return useMutation({
    mutationFn: mutate,
    onMutate: async (input: Input) => {
      const key = patchKeys.detail(input.id);
      await queryClient.cancelQueries({ queryKey: key });
      const before = queryClient.getQueryData<PatchJson>(key);
      if (before) queryClient.setQueryData(key, guess(before, input));
      return { before };
    },
    onError: (err, input, context) => {
      if (context?.before) {
        queryClient.setQueryData(patchKeys.detail(input.id), context.before);
      }
      push("error", rolledBack(err));
    },
    onSuccess: (patch, input) => {
      queryClient.setQueryData(patchKeys.detail(input.id), patch);
    },
    onSettled: () => {
      queryClient.invalidateQueries({ queryKey: patchKeys.all });
      queryClient.invalidateQueries({ queryKey: reportKeys.all });
      queryClient.invalidateQueries({ queryKey: entityKeys.all });
    },
  });
}

export function useVote() {
  return useOptimisticPatch(
    ({ id, agent, position }: VoteInput) => castVote(id, agent, position),
    (before, { agent, position }) => applyVote(before, agent, position),
  );
}

export function useStatusChange() {
  return useOptimisticPatch(
    ({ id, status, actor }: StatusInput) => changeStatus(id, status, actor),
    (before, { status }) => applyStatus(before, status),
  );
}
