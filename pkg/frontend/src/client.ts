// Line-oriented protocol client. The transport is pluggable so the browser
// uses a WebSocket (via the bridge) while tests drive a raw TCP socket.

import { ClientMsg, ServerMsg, encodeMsg, parseServerMsg } from './protocol.js'

export interface Transport {
  send(data: string): void
  close(): void
  onopen: (() => void) | null
  onclose: (() => void) | null
  ondata: ((chunk: string) => void) | null
}

export interface ClientHandlers {
  onMessage: (msg: ServerMsg) => void
  onStatus?: (status: 'connecting' | 'open' | 'reconnecting' | 'closed') => void
}

export class ProtocolClient {
  private transport: Transport | null = null
  private buffer = ''
  private nextSeq = 0
  private closed = false
  private retryMs = 500

  constructor(
    private connect: () => Transport,
    private handlers: ClientHandlers,
  ) {}

  open(): void {
    this.closed = false
    this.dial('connecting')
  }

  private dial(status: 'connecting' | 'reconnecting'): void {
    this.handlers.onStatus?.(status)
    const t = this.connect()
    this.transport = t
    this.buffer = ''
    t.onopen = () => {
      this.retryMs = 500
      this.handlers.onStatus?.('open')
    }
    t.ondata = (chunk) => {
      this.buffer += chunk
      let nl
      while ((nl = this.buffer.indexOf('\n')) >= 0) {
        const line = this.buffer.slice(0, nl)
        this.buffer = this.buffer.slice(nl + 1)
        if (!line.trim()) continue
        const msg = parseServerMsg(line)
        if (msg) this.handlers.onMessage(msg)
      }
    }
    t.onclose = () => {
      this.transport = null
      if (this.closed) {
        this.handlers.onStatus?.('closed')
        return
      }
      // reconnect with capped backoff; unsent frames are dropped, never staled
      const delay = this.retryMs
      this.retryMs = Math.min(this.retryMs * 2, 8000)
      setTimeout(() => {
        if (!this.closed) this.dial('reconnecting')
      }, delay)
    }
  }

  get connected(): boolean {
    return this.transport !== null
  }

  send(msg: ClientMsg): void {
    if (!this.transport) return // disconnected: frames are dropped, not buffered
    this.transport.send(encodeMsg(msg))
  }

  /** Send a landmark frame with a session-monotonic sequence number. */
  sendFrame(hand: 'Left' | 'Right', pts: number[][], tsMs: number): void {
    this.send({ type: 'frame', seq: this.nextSeq++, ts_ms: tsMs, hand, pts })
  }

  close(): void {
    this.closed = true
    this.transport?.close()
  }
}

export function webSocketTransport(url: string): Transport {
  const ws = new WebSocket(url)
  const t: Transport = {
    send: (data) => ws.send(data),
    close: () => ws.close(),
    onopen: null,
    onclose: null,
    ondata: null,
  }
  ws.onopen = () => t.onopen?.()
  ws.onclose = () => t.onclose?.()
  ws.onerror = () => ws.close()
  ws.onmessage = (ev) => t.ondata?.(String(ev.data))
  return t
}
