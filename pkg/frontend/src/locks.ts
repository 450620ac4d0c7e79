/**
 * Locked players.
 *
 * A lock is a client-side note to self ("not trading this player"), used to
 * grey out or hide GA rows that touch the player. It is never sent to the
 * service and does not constrain the engine.
 */

const locked = new Set<string>();
const listeners: Array<() => void> = [];

export const isLocked = (playerId: string): boolean => locked.has(playerId);

export const lockedIds = (): Set<string> => new Set(locked);

export const toggleLock = (playerId: string): void => {
  if (locked.has(playerId)) {
    locked.delete(playerId);
  } else {
    locked.add(playerId);
  }
  for (const listener of listeners) listener();
};

export const clearLocks = (): void => {
  locked.clear();
  for (const listener of listeners) listener();
};

/** Subscribe to lock changes; returns an unsubscribe function. */
export const onLocksChanged = (listener: () => void): (() => void) => {
  listeners.push(listener);
  return () => {
    const idx = listeners.indexOf(listener);
    if (idx >= 0) listeners.splice(idx, 1);
  };
};
