// Protocol conformance: every message type in a transcript recorded from
// the real service must reduce and render without errors or warnings.

import { readFileSync } from 'node:fs'
import { join, dirname } from 'node:path'
import { fileURLToPath } from 'node:url'
import { afterEach, beforeEach, expect, test, vi } from 'vitest'

import { parseServerMsg, ServerMsg } from '../src/protocol.js'
import { initialView, reduce, SessionView } from '../src/state.js'
import { renderHtml } from '../src/ui.js'

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), 'fixtures')

function transcript(): ServerMsg[] {
  const lines = readFileSync(join(FIXTURES, 'transcript.ndjson'), 'utf-8')
    .split('\n')
    .filter((l) => l.trim())
  return lines.map((l) => {
    const msg = parseServerMsg(l)
    expect(msg, `unparseable transcript line: ${l}`).not.toBeNull()
    return msg!
  })
}

let errSpy: ReturnType<typeof vi.spyOn>
let warnSpy: ReturnType<typeof vi.spyOn>

beforeEach(() => {
  errSpy = vi.spyOn(console, 'error')
  warnSpy = vi.spyOn(console, 'warn')
})
afterEach(() => {
  expect(errSpy).not.toHaveBeenCalled()
  expect(warnSpy).not.toHaveBeenCalled()
  vi.restoreAllMocks()
})

test('transcript covers every server message type', () => {
  const seen = new Set(transcript().map((m) => m.type))
  for (const kind of ['prediction', 'char', 'word', 'instruction', 'exec', 'error']) {
    expect(seen, `missing ${kind}`).toContain(kind)
  }
})

test('every transcript message reduces and renders cleanly', () => {
  let view = initialView()
  for (const msg of transcript()) {
    const next = reduce(view, msg)
    expect(next).not.toBe(view) // every message is a visible state change
    view = next
    expect(() => renderHtml(view)).not.toThrow()
  }
  // final state reflects the recorded session
  expect(view.lastInstruction?.text).toBe('move the ball')
  expect(view.lastExec?.success).toBe(false)
  expect(view.scene?.gripper.holding).toBe('APPLE')
  expect(view.errorCount).toBe(2)
})

test('char messages grow the buffer, word messages clear it', () => {
  let view = initialView()
  for (const c of 'GRAB') view = reduce(view, { type: 'char', char: c, ts_ms: 0 })
  expect(view.charBuffer).toBe('GRAB')
  view = reduce(view, {
    type: 'word', raw: 'GRAB', word: 'GRAB', distance: 0, accepted: true,
    candidates: ['GRAB'], cause: 'space_gesture', ts_ms: 0,
  })
  expect(view.charBuffer).toBe('')
  expect(view.commandWords).toEqual(['GRAB'])
})

test('raw and refined strings are both rendered, correction highlighted', () => {
  const view = reduce(initialView(), {
    type: 'word', raw: 'GRAP', word: 'GRAB', distance: 1, accepted: true,
    candidates: ['GRAB'], cause: 'space_gesture', ts_ms: 0,
  })
  const html = renderHtml(view)
  expect(html).toContain('GRAP')
  expect(html).toContain('GRAB')
  expect(html).toContain('corrected')
})

test('rejected words render distinctly with a respell prompt', () => {
  const view = reduce(initialView(), {
    type: 'word', raw: 'XQZW', word: 'XQZW', distance: 4, accepted: false,
    candidates: [], cause: 'flush', ts_ms: 0,
  })
  const html = renderHtml(view)
  expect(html).toContain('rejected-word')
  expect(html).toContain('respell')
})

test('failed exec shows a failure banner', () => {
  const view = reduce(initialView(), {
    type: 'exec', instruction_id: 1, success: false, steps: 0,
    reason: 'no object named CUP',
    scene: { bounds: [2, 2], gripper: { pos: [0, 0] }, objects: [] },
  })
  expect(renderHtml(view)).toContain('failed: no object named CUP')
})

test('confirm-before-execute defaults on and holds instructions as pending', () => {
  let view = initialView()
  expect(view.confirmBeforeExec).toBe(true)
  const instr = { type: 'instruction', id: 7, text: 'grab the apple', words: ['GRAB', 'APPLE'], ts_ms: 0 } as const
  view = reduce(view, instr)
  expect(view.pendingInstruction?.id).toBe(7)
  const html = renderHtml(view)
  expect(html).toContain('awaiting approval')
  expect(html).toContain('id="approve"')
  // the matching exec (after approval) resolves the pending state
  view = reduce(view, {
    type: 'exec', instruction_id: 7, success: true, steps: 3, reason: '',
    scene: { bounds: [2, 2], gripper: { pos: [0, 0] }, objects: [] },
  })
  expect(view.pendingInstruction).toBeNull()
})

test('debounce window ring tracks the last K labels with gaps', () => {
  let view: SessionView = initialView(4)
  const pred = (seq: number, label: string, accepted: boolean) =>
    ({ type: 'prediction', seq, label, confidence: 0.9, accepted, latency_us: 10 }) as const
  view = reduce(view, pred(0, 'A', true))
  view = reduce(view, pred(1, 'A', false))
  view = reduce(view, pred(2, 'B', true))
  expect(view.window).toEqual(['A', null, 'B'])
  for (let i = 3; i < 10; i++) view = reduce(view, pred(i, 'C', true))
  expect(view.window).toEqual(['C', 'C', 'C', 'C']) // capped at K
})

test('unknown message types are ignored with a log, session continues', () => {
  expect(parseServerMsg('{"type": "mystery"}')).toBeNull()
  expect(parseServerMsg('not json at all')).toBeNull()
  expect(warnSpy).toHaveBeenCalledTimes(2)
  warnSpy.mockClear()
})

test('controls are disabled while disconnected', () => {
  const html = renderHtml(initialView()) // status: connecting
  expect(html).toMatch(/id="flush" disabled/)
  expect(html).toMatch(/id="reset" disabled/)
})
