// Wire protocol: newline-delimited JSON, one object per line, both directions.
// These types mirror the service exactly; the client adds nothing on top.

export interface PredictionMsg {
  type: 'prediction'
  seq: number
  label: string
  confidence: number
  accepted: boolean
  latency_us: number
}

export interface CharMsg {
  type: 'char'
  char: string
  ts_ms: number
}

export interface WordMsg {
  type: 'word'
  raw: string
  word: string
  distance: number
  accepted: boolean
  candidates: string[]
  cause: 'space_gesture' | 'idle_timeout' | 'flush'
  ts_ms: number
}

export interface InstructionMsg {
  type: 'instruction'
  id: number
  text: string
  words: string[]
  ts_ms: number
}

export interface SceneState {
  bounds: [number, number]
  gripper: { pos: [number, number]; holding?: string | null }
  objects: { name: string; pos: [number, number]; held?: boolean }[]
}

export interface ExecMsg {
  type: 'exec'
  instruction_id: number
  success: boolean
  steps: number
  reason: string
  scene: SceneState
}

export interface ErrorMsg {
  type: 'error'
  code: string
  message: string
  recoverable: boolean
}

export type ServerMsg =
  | PredictionMsg
  | CharMsg
  | WordMsg
  | InstructionMsg
  | ExecMsg
  | ErrorMsg

const SERVER_TYPES = new Set(['prediction', 'char', 'word', 'instruction', 'exec', 'error'])

/** Parse one inbound line; unknown or invalid lines return null (and are logged). */
export function parseServerMsg(line: string): ServerMsg | null {
  let obj: unknown
  try {
    obj = JSON.parse(line)
  } catch {
    console.warn('unparseable server line ignored:', line.slice(0, 120))
    return null
  }
  if (
    typeof obj !== 'object' ||
    obj === null ||
    !SERVER_TYPES.has((obj as { type?: string }).type ?? '')
  ) {
    console.warn('unknown server message ignored:', line.slice(0, 120))
    return null
  }
  return obj as ServerMsg
}

// 21-point hand topology, [x, y, z] per point, wrist first.
export const NUM_LANDMARKS = 21

export interface FrameMsg {
  type: 'frame'
  seq: number
  ts_ms: number
  hand: 'Left' | 'Right'
  pts: number[][]
}

export interface FlushMsg {
  type: 'flush'
  ts_ms?: number
}

export interface ResetMsg {
  type: 'reset'
}

export interface ConfigMsg {
  type: 'config'
  hold_exec?: boolean
  threshold?: number
  approve?: number
  reject?: number
}

export type ClientMsg = FrameMsg | FlushMsg | ResetMsg | ConfigMsg

export function encodeMsg(msg: ClientMsg): string {
  return JSON.stringify(msg) + '\n'
}
