// Webcam hand tracking. The landmark model itself is pluggable (any
// in-browser tracker producing the 21-point topology works, e.g. the
// MediaPipe Hands bundle loaded from a CDN); this wrapper owns the camera,
// the per-frame loop, and the emission contract: frames stream only while a
// hand is visible, with strictly increasing timestamps at camera rate.

import { NUM_LANDMARKS } from './protocol.js'

export interface HandObservation {
  hand: 'Left' | 'Right'
  /** 21 [x, y, z] landmarks in image-normalized coordinates */
  pts: number[][]
}

/** Per-tick detector: null when no hand is in view. */
export type LandmarkSource = (video: HTMLVideoElement | null) => HandObservation | null

export interface TrackerOptions {
  onFrame: (obs: HandObservation, tsMs: number) => void
  onStatus?: (status: 'starting' | 'running' | 'camera-denied' | 'stopped') => void
  /** test hook: scheduler replacing requestAnimationFrame */
  schedule?: (cb: () => void) => void
  now?: () => number
}

export class HandTracker {
  private video: HTMLVideoElement | null = null
  private stream: MediaStream | null = null
  private stopped = false
  private schedule: (cb: () => void) => void
  private now: () => number

  constructor(
    private source: LandmarkSource,
    private opts: TrackerOptions,
  ) {
    this.schedule = opts.schedule ?? ((cb) => requestAnimationFrame(() => cb()))
    this.now = opts.now ?? (() => performance.now())
  }

  async start(video?: HTMLVideoElement): Promise<void> {
    this.opts.onStatus?.('starting')
    if (video) {
      this.video = video
      try {
        this.stream = await navigator.mediaDevices.getUserMedia({
          video: { facingMode: 'user', width: 640, height: 480 },
        })
        video.srcObject = this.stream
        await video.play()
      } catch (err) {
        console.warn('camera unavailable:', err)
        this.opts.onStatus?.('camera-denied')
        return
      }
    }
    this.stopped = false
    this.opts.onStatus?.('running')
    this.loop()
  }

  private loop(): void {
    if (this.stopped) return
    const obs = this.source(this.video)
    if (obs) {
      if (obs.pts.length !== NUM_LANDMARKS) {
        console.warn(`tracker produced ${obs.pts.length} landmarks, expected ${NUM_LANDMARKS}`)
      } else {
        this.opts.onFrame(obs, this.now())
      }
    }
    this.schedule(() => this.loop())
  }

  stop(): void {
    this.stopped = true
    this.stream?.getTracks().forEach((t) => t.stop())
    this.stream = null
    this.opts.onStatus?.('stopped')
  }
}

/** Draw the landmark overlay on a canvas sized to the video element. */
export function drawLandmarks(ctx: CanvasRenderingContext2D, obs: HandObservation): void {
  const { width, height } = ctx.canvas
  ctx.clearRect(0, 0, width, height)
  ctx.fillStyle = '#00e5ff'
  for (const [x, y] of obs.pts) {
    ctx.beginPath()
    ctx.arc(x * width, y * height, 3, 0, 2 * Math.PI)
    ctx.fill()
  }
}
