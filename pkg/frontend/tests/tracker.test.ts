// Frame emission contract: frames stream at camera rate while a hand is
// visible, nothing is emitted without one, and timestamps increase.

import { expect, test } from 'vitest'

import { HandObservation, HandTracker } from '../src/tracker.js'

function fakeHand(): HandObservation {
  return { hand: 'Left', pts: Array.from({ length: 21 }, (_, i) => [i / 21, 0.5, 0]) }
}

/** Run the tracker loop for `ticks` simulated 30 fps camera frames. */
async function runTicks(
  ticks: number,
  source: (tick: number) => HandObservation | null,
): Promise<{ tsMs: number }[]> {
  const emitted: { tsMs: number }[] = []
  let tick = 0
  const pending: (() => void)[] = []
  const tracker = new HandTracker(() => source(tick), {
    onFrame: (_obs, tsMs) => emitted.push({ tsMs }),
    schedule: (cb) => pending.push(cb),
    now: () => tick * (1000 / 30),
  })
  await tracker.start()
  while (tick < ticks) {
    tick++
    const cb = pending.shift()
    if (!cb) break
    cb()
  }
  tracker.stop()
  return emitted
}

test('hand visible for 1s at 30fps emits ~30 frames with increasing timestamps', async () => {
  const emitted = await runTicks(30, () => fakeHand())
  expect(emitted.length).toBeGreaterThanOrEqual(30)
  for (let i = 1; i < emitted.length; i++) {
    expect(emitted[i].tsMs).toBeGreaterThan(emitted[i - 1].tsMs)
  }
  // >= 15 fps over the simulated second
  const span = emitted[emitted.length - 1].tsMs - emitted[0].tsMs
  expect(emitted.length / (span / 1000 + 1 / 30)).toBeGreaterThanOrEqual(15)
})

test('no hand detected emits zero frames', async () => {
  const emitted = await runTicks(30, () => null)
  expect(emitted).toEqual([])
})

test('emission pauses while the hand is out of view and resumes after', async () => {
  const emitted = await runTicks(30, (tick) => (tick >= 10 && tick < 20 ? null : fakeHand()))
  // 31 loop passes (initial + 30 ticks) minus the 10 hand-absent ones
  expect(emitted.length).toBe(21)
})

test('malformed landmark sets are dropped with a warning', async () => {
  const bad: HandObservation = { hand: 'Left', pts: [[0, 0, 0]] }
  const emitted = await runTicks(5, () => bad)
  expect(emitted).toEqual([])
})
