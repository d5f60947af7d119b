// WebSocket-to-TCP bridge. Browsers cannot open raw TCP sockets, so each
// WebSocket connection is piped 1:1 onto a TCP connection to the service;
// the NDJSON payload passes through untouched in both directions.
//
//   node dist/bridge.js [--ws-port 8766] [--tcp-host 127.0.0.1] [--tcp-port 7325]

import net from 'node:net'
import { WebSocketServer, WebSocket, RawData } from 'ws'

export interface BridgeOptions {
  wsPort: number
  tcpHost: string
  tcpPort: number
}

export function startBridge(opts: BridgeOptions): WebSocketServer {
  const wss = new WebSocketServer({ port: opts.wsPort })
  wss.on('connection', (ws: WebSocket) => {
    const tcp = net.createConnection({ host: opts.tcpHost, port: opts.tcpPort })
    tcp.setNoDelay(true)
    const queue: string[] = []
    tcp.on('connect', () => {
      for (const data of queue.splice(0)) tcp.write(data)
    })
    ws.on('message', (data: RawData) => {
      const text = data.toString()
      if (tcp.connecting) queue.push(text)
      else tcp.write(text)
    })
    tcp.on('data', (chunk) => ws.send(chunk.toString()))
    // one session per connection: either side closing tears down both
    tcp.on('close', () => ws.close())
    tcp.on('error', (err) => {
      console.error('tcp error:', err.message)
      ws.close()
    })
    ws.on('close', () => tcp.destroy())
    ws.on('error', () => tcp.destroy())
  })
  return wss
}

function arg(name: string, fallback: string): string {
  const i = process.argv.indexOf(name)
  return i >= 0 && process.argv[i + 1] ? process.argv[i + 1] : fallback
}

if (process.argv[1]?.endsWith('bridge.js')) {
  const opts = {
    wsPort: Number(arg('--ws-port', '8766')),
    tcpHost: arg('--tcp-host', '127.0.0.1'),
    tcpPort: Number(arg('--tcp-port', '7325')),
  }
  startBridge(opts)
  console.log(`bridge: ws://0.0.0.0:${opts.wsPort} <-> tcp ${opts.tcpHost}:${opts.tcpPort}`)
}
