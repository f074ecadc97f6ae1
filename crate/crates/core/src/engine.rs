//! Discrete-event simulation of the downlink path
//! remote host → (backhaul) → satellite gNB queue → (radio) → UE.
//!
//! Time is kept in integer nanoseconds. Service and generation instants are
//! computed from cumulative bit counts rather than by adding rounded
//! per-packet durations, so long runs do not drift.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::scenario::ResolvedScenario;

pub const DEFAULT_PACKET_SIZE_BYTES: u32 = 1500;
pub const DEFAULT_DURATION_S: f64 = 10.0;
pub const DEFAULT_WARMUP_S: f64 = 1.0;

const NS_PER_S: u128 = 1_000_000_000;

// ============================================================================
// Packets and events
// ============================================================================

/// One application datagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Packet {
    pub seq: u64,
    pub size_bytes: u32,
    pub t_generated_ns: u64,
    /// Arrival at the gNB buffer.
    pub t_enqueued_ns: u64,
    pub t_delivered_ns: Option<u64>,
    /// Generated inside the measurement window.
    pub measured: bool,
}

/// Event kinds, in tie-break order for events sharing a timestamp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EventKind {
    Generate,
    EnqueueAtGnb,
    ServiceComplete,
    Deliver,
    EndOfRun,
}

#[derive(Debug, Clone)]
pub struct Event {
    pub time_ns: u64,
    pub kind: EventKind,
    pub seq: u64,
    pub packet: Option<Packet>,
}

impl Event {
    fn key(&self) -> (u64, EventKind, u64) {
        (self.time_ns, self.kind, self.seq)
    }
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Event {}

impl Ord for Event {
    // Reversed: BinaryHeap is a max-heap and we want the earliest event.
    fn cmp(&self, other: &Self) -> Ordering {
        other.key().cmp(&self.key())
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Future-event set ordered by `(time, kind, seq)`.
#[derive(Debug, Default)]
pub struct EventQueue {
    heap: BinaryHeap<Event>,
}

impl EventQueue {
    pub fn push(&mut self, ev: Event) {
        self.heap.push(ev);
    }

    pub fn pop(&mut self) -> Option<Event> {
        self.heap.pop()
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

// ============================================================================
// Run parameters and metrics
// ============================================================================

/// Uniform per-packet generation jitter in `[0, max_ns)`, from a seeded
/// ChaCha stream. `max_ns` must be below the packet interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Jitter {
    pub max_ns: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunParams {
    pub source_rate_bps: f64,
    pub duration_s: f64,
    pub packet_size_bytes: u32,
    pub warmup_s: f64,
    /// Keep simulating after `duration_s` (with the source stopped) until
    /// every measured packet is delivered or dropped. When false the run
    /// stops at `duration_s` and unresolved packets count as in flight.
    pub drain: bool,
    pub jitter: Option<Jitter>,
}

impl RunParams {
    pub fn new(source_rate_bps: f64) -> Self {
        Self {
            source_rate_bps,
            duration_s: DEFAULT_DURATION_S,
            packet_size_bytes: DEFAULT_PACKET_SIZE_BYTES,
            warmup_s: DEFAULT_WARMUP_S,
            drain: true,
            jitter: None,
        }
    }

    pub fn with_rate(&self, source_rate_bps: f64) -> Self {
        Self {
            source_rate_bps,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.source_rate_bps > 0.0 && self.source_rate_bps.is_finite()) {
            return Err(domain("source rate must be > 0", self.source_rate_bps));
        }
        if !(self.warmup_s >= 0.0 && self.warmup_s.is_finite()) {
            return Err(domain("warmup must be >= 0", self.warmup_s));
        }
        if !(self.duration_s > self.warmup_s && self.duration_s.is_finite()) {
            return Err(domain("duration must exceed warmup", self.duration_s));
        }
        if self.packet_size_bytes == 0 {
            return Err(domain("packet size must be > 0", 0.0));
        }
        Ok(())
    }

    pub fn measured_duration_s(&self) -> f64 {
        self.duration_s - self.warmup_s
    }
}

/// Order statistics of end-to-end latency over delivered packets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatencyStats {
    pub mean_ms: f64,
    pub min_ms: f64,
    pub p50_ms: f64,
    pub p95_ms: f64,
    pub max_ms: f64,
}

impl LatencyStats {
    /// Exact nearest-rank percentiles over the given samples (ns).
    pub fn from_samples_ns(samples: &mut [u64]) -> Option<Self> {
        if samples.is_empty() {
            return None;
        }
        samples.sort_unstable();
        let n = samples.len();
        let rank = |p: f64| samples[((p * n as f64).ceil() as usize).clamp(1, n) - 1];
        let sum: u128 = samples.iter().map(|&s| s as u128).sum();
        let ms = |ns: u64| ns as f64 * 1e-6;
        Some(Self {
            mean_ms: sum as f64 / n as f64 * 1e-6,
            min_ms: ms(samples[0]),
            p50_ms: ms(rank(0.50)),
            p95_ms: ms(rank(0.95)),
            max_ms: ms(samples[n - 1]),
        })
    }
}

/// Outcome of one run, counted over packets generated in
/// `[warmup, duration)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub offered_rate_bps: f64,
    pub measured_duration_s: f64,
    pub generated_count: u64,
    pub delivered_count: u64,
    pub dropped_count: u64,
    pub in_flight_at_end: u64,
    /// Payload delivered to the UE during `[warmup, duration)`, whichever
    /// packets it belonged to.
    pub window_delivered_bytes: u64,
    /// `window_delivered_bytes` in bits over the measured duration.
    pub throughput_bps: f64,
    pub pdr: f64,
    pub latency_ms: Option<LatencyStats>,
    pub min_latency_ns: Option<u64>,
    /// Backhaul + propagation + serialization of one packet, ns. No packet
    /// can beat this.
    pub latency_floor_ns: u64,
    /// Deliveries arrived in generation order.
    pub in_order: bool,
}

impl RunMetrics {
    pub fn is_conserved(&self) -> bool {
        self.generated_count == self.delivered_count + self.dropped_count + self.in_flight_at_end
    }
}

// ============================================================================
// Simulation
// ============================================================================

/// Fixed-point description of the scenario, all in ns / bits.
struct Timing {
    backhaul_ns: u64,
    propagation_ns: u64,
    slot_ns: u64,
    capacity_bps: u128,
    buffer_bytes: u64,
}

impl Timing {
    fn from_scenario(scenario: &ResolvedScenario) -> Result<Self> {
        let cap = scenario.capacity_bps.round();
        if !(cap >= 1.0 && cap.is_finite()) {
            return Err(Error::Config(format!(
                "scenario '{}' has zero link capacity ({} bit/s)",
                scenario.id(),
                scenario.capacity_bps
            )));
        }
        Ok(Self {
            backhaul_ns: (scenario.config.backhaul_delay_ms * 1e6).round() as u64,
            propagation_ns: (scenario.propagation_delay_s * 1e9).round() as u64,
            slot_ns: scenario.config.numerology()?.slot_duration_ns(),
            capacity_bps: cap as u128,
            buffer_bytes: scenario.config.buffer_bytes,
        })
    }

    /// Time to clock `bits` onto the link from the start of a busy period.
    fn service_ns(&self, bits: u128) -> u64 {
        (bits * NS_PER_S).div_ceil(self.capacity_bps) as u64
    }

    fn next_slot_boundary(&self, t: u64) -> u64 {
        t.div_ceil(self.slot_ns) * self.slot_ns
    }
}

/// Picks the completion time of `pkt` on a link that became free at `now`.
///
/// The scheduler hands out transmission opportunities on slot boundaries, so
/// a packet is eligible from the first boundary at or after it reached the
/// gNB. If that is no later than `now` and the link was busy, the packet
/// continues the current busy period back to back; otherwise a new busy
/// period starts at the eligibility boundary.
///
/// Returns `(completion, busy_start, busy_bits)`.
fn schedule(timing: &Timing, now: u64, busy: Option<(u64, u128)>, pkt: &Packet) -> (u64, u64, u128) {
    let bits = pkt.size_bytes as u128 * 8;
    let eligible = timing.next_slot_boundary(pkt.t_enqueued_ns);
    match busy {
        Some((start, acc)) if eligible <= now => {
            let acc = acc + bits;
            (start + timing.service_ns(acc), start, acc)
        }
        _ => {
            let start = eligible.max(now);
            (start + timing.service_ns(bits), start, bits)
        }
    }
}

/// Constant-bit-rate source with optional jitter.
struct Source {
    phase_ns: u64,
    packet_bits: u128,
    /// Rate in millibit/s so fractional bit rates stay exact.
    rate_millibit_s: u128,
    jitter: Option<(u64, ChaCha8Rng)>,
}

impl Source {
    fn nominal_ns(&self, k: u64) -> u64 {
        self.phase_ns + (k as u128 * self.packet_bits * NS_PER_S * 1000 / self.rate_millibit_s) as u64
    }

    fn time_of(&mut self, k: u64) -> u64 {
        let base = self.nominal_ns(k);
        match &mut self.jitter {
            Some((max, rng)) if *max > 0 => base + rng.random_range(0..*max),
            _ => base,
        }
    }
}

/// Runs one deterministic simulation of a resolved scenario.
pub fn run(scenario: &ResolvedScenario, params: &RunParams) -> Result<RunMetrics> {
    params.validate()?;
    let timing = Timing::from_scenario(scenario)?;
    let rate_milli = (params.source_rate_bps * 1000.0).round();
    if rate_milli < 1.0 {
        return Err(domain("source rate must be >= 0.001 bit/s", params.source_rate_bps));
    }
    let packet_bits = params.packet_size_bytes as u128 * 8;
    let mut source = Source {
        phase_ns: timing.slot_ns / 2,
        packet_bits,
        rate_millibit_s: rate_milli as u128,
        jitter: None,
    };
    if let Some(j) = params.jitter {
        let interval = source.nominal_ns(1) - source.nominal_ns(0);
        if j.max_ns >= interval {
            return Err(domain("jitter must be shorter than the packet interval", j.max_ns as f64));
        }
        source.jitter = Some((j.max_ns, ChaCha8Rng::seed_from_u64(j.seed)));
    }

    let warmup_ns = (params.warmup_s * 1e9).round() as u64;
    let duration_ns = (params.duration_s * 1e9).round() as u64;
    let size = params.packet_size_bytes;

    let mut events = EventQueue::default();
    let mut fifo: VecDeque<Packet> = VecDeque::new();
    let mut backlog_bytes: u64 = 0;
    let mut busy = false;
    let mut busy_start_ns: u64 = 0;
    let mut busy_bits: u128 = 0;

    let mut generated = 0u64;
    let mut delivered = 0u64;
    let mut dropped = 0u64;
    let mut window_bytes = 0u64;
    let mut latencies: Vec<u64> = Vec::new();
    let mut last_delivered_seq: Option<u64> = None;
    let mut in_order = true;

    let t0 = source.time_of(0);
    if t0 < duration_ns {
        events.push(Event {
            time_ns: t0,
            kind: EventKind::Generate,
            seq: 0,
            packet: None,
        });
    }
    if !params.drain {
        events.push(Event {
            time_ns: duration_ns,
            kind: EventKind::EndOfRun,
            seq: u64::MAX,
            packet: None,
        });
    }

    while let Some(ev) = events.pop() {
        let now = ev.time_ns;
        match ev.kind {
            EventKind::Generate => {
                let measured = now >= warmup_ns;
                if measured {
                    generated += 1;
                }
                let pkt = Packet {
                    seq: ev.seq,
                    size_bytes: size,
                    t_generated_ns: now,
                    t_enqueued_ns: now + timing.backhaul_ns,
                    t_delivered_ns: None,
                    measured,
                };
                events.push(Event {
                    time_ns: pkt.t_enqueued_ns,
                    kind: EventKind::EnqueueAtGnb,
                    seq: pkt.seq,
                    packet: Some(pkt),
                });
                let next = ev.seq + 1;
                let t_next = source.time_of(next);
                if t_next < duration_ns {
                    events.push(Event {
                        time_ns: t_next,
                        kind: EventKind::Generate,
                        seq: next,
                        packet: None,
                    });
                }
            }
            EventKind::EnqueueAtGnb => {
                let pkt = ev.packet.expect("enqueue carries a packet");
                if backlog_bytes + pkt.size_bytes as u64 > timing.buffer_bytes {
                    if pkt.measured {
                        dropped += 1;
                    }
                    continue;
                }
                backlog_bytes += pkt.size_bytes as u64;
                if busy {
                    fifo.push_back(pkt);
                } else {
                    busy = true;
                    let (done, start, bits) = schedule(&timing, now, None, &pkt);
                    busy_start_ns = start;
                    busy_bits = bits;
                    events.push(Event {
                        time_ns: done,
                        kind: EventKind::ServiceComplete,
                        seq: pkt.seq,
                        packet: Some(pkt),
                    });
                }
            }
            EventKind::ServiceComplete => {
                let pkt = ev.packet.expect("service completion carries a packet");
                backlog_bytes -= pkt.size_bytes as u64;
                events.push(Event {
                    time_ns: now + timing.propagation_ns,
                    kind: EventKind::Deliver,
                    seq: pkt.seq,
                    packet: Some(pkt),
                });
                match fifo.pop_front() {
                    Some(next) => {
                        let (done, start, bits) =
                            schedule(&timing, now, Some((busy_start_ns, busy_bits)), &next);
                        busy_start_ns = start;
                        busy_bits = bits;
                        events.push(Event {
                            time_ns: done,
                            kind: EventKind::ServiceComplete,
                            seq: next.seq,
                            packet: Some(next),
                        });
                    }
                    None => busy = false,
                }
            }
            EventKind::Deliver => {
                let mut pkt = ev.packet.expect("delivery carries a packet");
                pkt.t_delivered_ns = Some(now);
                if let Some(prev) = last_delivered_seq {
                    in_order &= pkt.seq > prev;
                }
                last_delivered_seq = Some(pkt.seq);
                if pkt.measured {
                    delivered += 1;
                    latencies.push(now - pkt.t_generated_ns);
                }
                if (warmup_ns..duration_ns).contains(&now) {
                    window_bytes += pkt.size_bytes as u64;
                }
            }
            EventKind::EndOfRun => break,
        }
    }

    let min_latency_ns = latencies.iter().copied().min();
    let latency_ms = LatencyStats::from_samples_ns(&mut latencies);
    let measured_duration_s = params.measured_duration_s();
    let serialization_floor_ns = (packet_bits * NS_PER_S / timing.capacity_bps) as u64;
    Ok(RunMetrics {
        offered_rate_bps: params.source_rate_bps,
        measured_duration_s,
        generated_count: generated,
        delivered_count: delivered,
        dropped_count: dropped,
        in_flight_at_end: generated - delivered - dropped,
        window_delivered_bytes: window_bytes,
        throughput_bps: window_bytes as f64 * 8.0 / measured_duration_s,
        pdr: if generated == 0 {
            1.0
        } else {
            delivered as f64 / generated as f64
        },
        latency_ms,
        min_latency_ns,
        latency_floor_ns: timing.backhaul_ns + timing.propagation_ns + serialization_floor_ns,
        in_order,
    })
}

/// Runs one simulation per source rate. Results come back in input order
/// regardless of `parallelism`.
pub fn sweep(
    scenario: &ResolvedScenario,
    rates_bps: &[f64],
    params: &RunParams,
    parallelism: usize,
) -> Result<Vec<(f64, RunMetrics)>> {
    if rates_bps.is_empty() {
        return Err(Error::Config("sweep needs at least one rate".into()));
    }
    if !rates_bps.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Config("sweep rates must be strictly increasing".into()));
    }
    let one = |&rate: &f64| run(scenario, &params.with_rate(rate)).map(|m| (rate, m));
    if parallelism <= 1 {
        return rates_bps.iter().map(one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| rates_bps.par_iter().map(one).collect())
}
