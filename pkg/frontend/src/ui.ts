// DOM rendering of the session view. renderHtml is pure (view in, markup
// out) so protocol-conformance tests can run it without a browser.

import type { SessionView } from './state.js'
import type { SceneState } from './protocol.js'

function esc(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;')
}

function windowRing(view: SessionView): string {
  const cells = []
  for (let i = 0; i < view.windowK; i++) {
    const label = view.window[i] ?? null
    const cls = label === null ? 'cell gap' : 'cell'
    cells.push(`<span class="${cls}">${label ? esc(label === 'SPACE' ? '␣' : label) : '·'}</span>`)
  }
  return `<div class="window-ring">${cells.join('')}</div>`
}

function sceneGrid(scene: SceneState | null): string {
  if (!scene) return '<div class="scene empty">no scene yet</div>'
  const [w, h] = scene.bounds
  const at = new Map<string, string>()
  for (const obj of scene.objects) {
    if (!obj.held) at.set(`${obj.pos[0]},${obj.pos[1]}`, obj.name[0])
  }
  const [gx, gy] = scene.gripper.pos
  const rows = []
  for (let y = h - 1; y >= 0; y--) {
    const cells = []
    for (let x = 0; x < w; x++) {
      const isGripper = x === gx && y === gy
      const glyph = isGripper ? 'G' : (at.get(`${x},${y}`) ?? '')
      cells.push(`<td class="${isGripper ? 'gripper' : ''}">${esc(glyph)}</td>`)
    }
    rows.push(`<tr>${cells.join('')}</tr>`)
  }
  const holding = scene.gripper.holding
    ? `<p class="holding">holding ${esc(scene.gripper.holding)}</p>`
    : ''
  return `<table class="scene">${rows.join('')}</table>${holding}`
}

export function renderHtml(view: SessionView): string {
  const p = view.prediction
  const prediction = p
    ? `<span class="${p.accepted ? 'accepted' : 'rejected'}">${esc(p.label)}</span>
       <span class="conf">${(p.confidence * 100).toFixed(1)}%</span>
       <span class="lat">${p.latency_us.toFixed(0)} µs</span>`
    : '<span class="none">—</span>'

  const w = view.lastWord
  const word = w
    ? w.accepted
      ? `<span class="raw">${esc(w.raw)}</span> → <span class="refined ${w.distance > 0 ? 'corrected' : ''}">${esc(w.word)}</span> <span class="cause">(${esc(w.cause)})</span>`
      : `<span class="raw rejected-word">${esc(w.raw)}</span> <span class="respell">not in dictionary — please respell</span>`
    : '<span class="none">—</span>'

  const instr = view.lastInstruction
  const pending = view.pendingInstruction
  const instruction = instr
    ? `<span class="text">"${esc(instr.text)}"</span>` +
      (pending && pending.id === instr.id
        ? ` <span class="pending">awaiting approval</span>
           <button id="approve" data-id="${pending.id}">approve</button>
           <button id="reject" data-id="${pending.id}">reject</button>`
        : '')
    : '<span class="none">—</span>'

  const e = view.lastExec
  const exec = e
    ? e.success
      ? `<span class="ok">done in ${e.steps} steps</span>`
      : `<span class="fail banner">failed: ${esc(e.reason)}</span>`
    : '<span class="none">—</span>'

  const err = view.lastError
  const error = err
    ? `<span class="error">[${esc(err.code)}] ${esc(err.message)}</span> <span class="count">(${view.errorCount} total)</span>`
    : '<span class="none">—</span>'

  const disabled = view.status === 'open' ? '' : 'disabled'
  return `
  <div class="console status-${view.status}">
    <section id="status"><h2>Connection</h2><span class="badge">${view.status}</span></section>
    <section id="prediction"><h2>Prediction</h2>${prediction}</section>
    <section id="debounce"><h2>Debounce window</h2>${windowRing(view)}</section>
    <section id="chars"><h2>Spelling</h2><span class="buffer">${esc(view.charBuffer) || '&nbsp;'}</span></section>
    <section id="word"><h2>Last word</h2>${word}</section>
    <section id="command"><h2>Command buffer</h2>${view.commandWords.map(esc).join(' ') || '<span class="none">—</span>'}</section>
    <section id="instruction"><h2>Instruction</h2>${instruction}</section>
    <section id="exec"><h2>Execution</h2>${exec}</section>
    <section id="scene"><h2>Scene</h2>${sceneGrid(view.scene)}</section>
    <section id="errors"><h2>Errors</h2>${error}</section>
    <section id="controls">
      <button id="flush" ${disabled}>flush</button>
      <button id="reset" ${disabled}>reset</button>
      <label><input type="checkbox" id="confirm-toggle" ${view.confirmBeforeExec ? 'checked' : ''}>
        confirm before execute</label>
    </section>
  </div>`
}

export interface ControlHandlers {
  onFlush: () => void
  onReset: () => void
  onConfirmToggle: (on: boolean) => void
  onApprove: (id: number) => void
  onReject: (id: number) => void
}

/** Re-render into the root element and (re)bind the control handlers. */
export function render(root: HTMLElement, view: SessionView, handlers: ControlHandlers): void {
  root.innerHTML = renderHtml(view)
  root.querySelector<HTMLButtonElement>('#flush')?.addEventListener('click', handlers.onFlush)
  root.querySelector<HTMLButtonElement>('#reset')?.addEventListener('click', handlers.onReset)
  root
    .querySelector<HTMLInputElement>('#confirm-toggle')
    ?.addEventListener('change', (ev) =>
      handlers.onConfirmToggle((ev.target as HTMLInputElement).checked),
    )
  const approve = root.querySelector<HTMLButtonElement>('#approve')
  approve?.addEventListener('click', () => handlers.onApprove(Number(approve.dataset.id)))
  const reject = root.querySelector<HTMLButtonElement>('#reject')
  reject?.addEventListener('click', () => handlers.onReject(Number(reject.dataset.id)))
}
