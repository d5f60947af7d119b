// Browser entry point: camera → frame messages out, server messages → view.

import { ProtocolClient, webSocketTransport } from './client.js'
import { HandObservation, HandTracker, LandmarkSource, drawLandmarks } from './tracker.js'
import { applyLocal, initialView, reduce, setStatus, SessionView } from './state.js'
import { render } from './ui.js'

const BRIDGE_URL = `ws://${location.hostname}:8766`

declare global {
  interface Window {
    // a loaded hand-tracking model registers itself here (see README)
    signpipeLandmarkSource?: LandmarkSource
  }
}

export function startConsole(root: HTMLElement, video: HTMLVideoElement, overlay: HTMLCanvasElement) {
  let view: SessionView = initialView()
  const ctx = overlay.getContext('2d')

  const paint = () =>
    render(root, view, {
      onFlush: () => {
        client.send({ type: 'flush', ts_ms: performance.now() })
        view = applyLocal(view, 'flush')
        paint()
      },
      onReset: () => {
        client.send({ type: 'reset' })
        view = applyLocal(view, 'reset')
        paint()
      },
      onConfirmToggle: (on) => {
        client.send({ type: 'config', hold_exec: on })
        view = applyLocal(view, { confirm: on })
        paint()
      },
      onApprove: (id) => {
        client.send({ type: 'config', approve: id })
        view = applyLocal(view, { resolvePending: id })
        paint()
      },
      onReject: (id) => {
        client.send({ type: 'config', reject: id })
        view = applyLocal(view, { resolvePending: id })
        paint()
      },
    })

  const client = new ProtocolClient(() => webSocketTransport(BRIDGE_URL), {
    onMessage: (msg) => {
      view = reduce(view, msg)
      paint()
    },
    onStatus: (status) => {
      view = setStatus(view, status)
      if (status === 'open') client.send({ type: 'config', hold_exec: view.confirmBeforeExec })
      paint()
    },
  })
  client.open()

  const source: LandmarkSource = (v) => window.signpipeLandmarkSource?.(v) ?? null
  const tracker = new HandTracker(source, {
    onFrame: (obs: HandObservation, tsMs: number) => {
      if (ctx) drawLandmarks(ctx, obs)
      if (client.connected) client.sendFrame(obs.hand, obs.pts, tsMs)
    },
  })
  void tracker.start(video)
  paint()
  return { client, tracker }
}
