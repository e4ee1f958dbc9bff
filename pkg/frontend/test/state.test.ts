import { describe, expect, it } from "vitest";

import type { ActivityStatus } from "../src/api.js";
import {
  ACTION_PRECONDITION,
  ACTION_RESULT,
  enabledActions,
  isLegal,
  nextStatus,
  STATUS_CHAIN,
  TEACHER_ACTIONS,
} from "../src/state.js";

describe("activity status machine", () => {
  it("mirrors the server's status chain exactly", () => {
    expect(STATUS_CHAIN).toEqual(["Draft", "Allocated", "Published", "FeedbackOpen", "Closed"]);
  });

  it("every action advances exactly one step along the chain", () => {
    for (const action of TEACHER_ACTIONS) {
      const from = ACTION_PRECONDITION[action];
      const to = ACTION_RESULT[action];
      expect(STATUS_CHAIN.indexOf(to)).toBe(STATUS_CHAIN.indexOf(from) + 1);
      expect(nextStatus(from)).toBe(to);
    }
  });

  it("is isomorphic: each non-terminal status enables exactly its one action", () => {
    for (const status of STATUS_CHAIN) {
      const enabled = enabledActions(status);
      if (status === "Closed") {
        expect(enabled).toEqual([]);
      } else {
        expect(enabled).toHaveLength(1);
        expect(ACTION_PRECONDITION[enabled[0]!]).toBe(status);
      }
    }
  });

  it("rejects every out-of-order (status, action) pair", () => {
    let legalPairs = 0;
    for (const status of STATUS_CHAIN) {
      for (const action of TEACHER_ACTIONS) {
        if (isLegal(status, action)) {
          legalPairs += 1;
        }
      }
    }
    expect(legalPairs).toBe(4); // one per non-terminal status
  });

  it("terminates: Closed has no successor", () => {
    expect(nextStatus("Closed" as ActivityStatus)).toBeNull();
  });
});
