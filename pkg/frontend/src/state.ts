// View-state reducer: every server message maps to a pure state update.
// All recognition state comes from the server; the client only displays it.

import type {
  ExecMsg,
  InstructionMsg,
  PredictionMsg,
  SceneState,
  ServerMsg,
  WordMsg,
} from './protocol.js'

export type ConnectionStatus = 'connecting' | 'open' | 'reconnecting' | 'closed'

export interface SessionView {
  status: ConnectionStatus
  /** ring of the last windowK accepted labels, null for rejected frames */
  window: (string | null)[]
  windowK: number
  prediction: PredictionMsg | null
  charBuffer: string
  lastWord: WordMsg | null
  /** accepted words awaiting a complete command */
  commandWords: string[]
  lastInstruction: InstructionMsg | null
  /** instruction awaiting operator approval (confirm-before-execute) */
  pendingInstruction: InstructionMsg | null
  confirmBeforeExec: boolean
  lastExec: ExecMsg | null
  scene: SceneState | null
  lastError: { code: string; message: string } | null
  errorCount: number
}

export function initialView(windowK = 15): SessionView {
  return {
    status: 'connecting',
    window: [],
    windowK,
    prediction: null,
    charBuffer: '',
    lastWord: null,
    commandWords: [],
    lastInstruction: null,
    pendingInstruction: null,
    confirmBeforeExec: true, // human gate before dispatch is the safe default
    lastExec: null,
    scene: null,
    lastError: null,
    errorCount: 0,
  }
}

export function reduce(view: SessionView, msg: ServerMsg): SessionView {
  switch (msg.type) {
    case 'prediction': {
      const label = msg.accepted ? msg.label : null
      const window = [...view.window, label].slice(-view.windowK)
      return { ...view, prediction: msg, window }
    }
    case 'char':
      return { ...view, charBuffer: view.charBuffer + msg.char }
    case 'word': {
      const commandWords = msg.accepted ? [...view.commandWords, msg.word] : view.commandWords
      return { ...view, charBuffer: '', lastWord: msg, commandWords }
    }
    case 'instruction': {
      const next: SessionView = {
        ...view,
        lastInstruction: msg,
        commandWords: [],
        pendingInstruction: view.confirmBeforeExec ? msg : null,
      }
      return next
    }
    case 'exec':
      return {
        ...view,
        lastExec: msg,
        scene: msg.scene,
        pendingInstruction:
          view.pendingInstruction?.id === msg.instruction_id ? null : view.pendingInstruction,
      }
    case 'error':
      return {
        ...view,
        lastError: { code: msg.code, message: msg.message },
        errorCount: view.errorCount + 1,
      }
  }
}

/** Local effects of operator controls, mirrored so the display updates instantly. */
export function applyLocal(
  view: SessionView,
  action: 'flush' | 'reset' | { confirm: boolean } | { resolvePending: number },
): SessionView {
  if (action === 'flush') return { ...view, charBuffer: '', commandWords: [] }
  if (action === 'reset')
    return { ...view, window: [], charBuffer: '', commandWords: [], pendingInstruction: null }
  if ('confirm' in action) return { ...view, confirmBeforeExec: action.confirm }
  return view.pendingInstruction?.id === action.resolvePending
    ? { ...view, pendingInstruction: null }
    : view
}

export function setStatus(view: SessionView, status: ConnectionStatus): SessionView {
  return { ...view, status }
}
