//! Event-driven simulation of a station graph under Poisson arrivals.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::rng::{open_unit, rng_exponential, stream_rng, SimRng};
use super::stats::mean_ci95;
use super::topology::Topology;
use crate::error::{Error, Result};

pub const DEFAULT_WARMUP_DEPARTURES: u64 = 10_000;
pub const DEFAULT_MEASURED_DEPARTURES: u64 = 100_000;
pub const DEFAULT_REPLICATIONS: u32 = 10;
pub const DEFAULT_QUEUE_LIMIT: usize = 10_000_000;
/// Fewer measured departures than this and no interval is reported.
pub const MIN_MEASURED_DEPARTURES: u64 = 1_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub topology: Topology,
    pub arrival_rate: f64,
    pub warmup_departures: u64,
    pub measured_departures: u64,
    pub replications: u32,
    pub seed: u64,
    /// A waiting line longer than this aborts the run as diverged.
    pub queue_limit: usize,
}

impl SimConfig {
    pub fn new(topology: Topology, arrival_rate: f64) -> Self {
        Self {
            topology,
            arrival_rate,
            warmup_departures: DEFAULT_WARMUP_DEPARTURES,
            measured_departures: DEFAULT_MEASURED_DEPARTURES,
            replications: DEFAULT_REPLICATIONS,
            seed: 0,
            queue_limit: DEFAULT_QUEUE_LIMIT,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.arrival_rate > 0.0 && self.arrival_rate.is_finite()) {
            return Err(Error::validation("arrival_rate", "must be a positive finite number"));
        }
        if self.measured_departures < MIN_MEASURED_DEPARTURES {
            return Err(Error::validation(
                "measured_departures",
                format!("must be at least {MIN_MEASURED_DEPARTURES} for a confidence interval, got {}", self.measured_departures),
            ));
        }
        if self.replications < 2 {
            return Err(Error::validation("replications", "need at least 2 replications for a confidence interval"));
        }
        if self.queue_limit == 0 {
            return Err(Error::validation("queue_limit", "must be positive"));
        }
        Ok(())
    }
}

/// What a single replication observed over its measurement window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationStats {
    pub mean_response: f64,
    /// Time-average number of packets in the system.
    pub mean_in_system: f64,
    /// Observed throughput over the window.
    pub throughput: f64,
    /// Arrivals routed to each branch over the whole replication.
    pub branch_arrivals: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub mean_response: f64,
    pub ci95_halfwidth: f64,
    pub per_replication_means: Vec<f64>,
    pub departures_counted: u64,
    pub seed: u64,
    pub replications: Vec<ReplicationStats>,
}

impl SimResult {
    /// Mean of the per-replication time-average populations.
    pub fn mean_in_system(&self) -> f64 {
        self.replications.iter().map(|r| r.mean_in_system).sum::<f64>() / self.replications.len() as f64
    }

    /// Branch arrival counts summed over replications.
    pub fn branch_arrivals(&self) -> Vec<u64> {
        let width = self.replications.first().map_or(0, |r| r.branch_arrivals.len());
        let mut total = vec![0; width];
        for r in &self.replications {
            for (t, n) in total.iter_mut().zip(&r.branch_arrivals) {
                *t += n;
            }
        }
        total
    }
}

pub fn run_simulation(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    config.topology.check_stable(config.arrival_rate)?;
    let replications = (0..config.replications)
        .into_par_iter()
        .map(|k| run_replication(config, k))
        .collect::<Result<Vec<_>>>()?;
    let per_replication_means: Vec<f64> = replications.iter().map(|r| r.mean_response).collect();
    let (mean_response, ci95_halfwidth) = mean_ci95(&per_replication_means);
    Ok(SimResult {
        mean_response,
        ci95_halfwidth,
        per_replication_means,
        departures_counted: config.measured_departures * u64::from(config.replications),
        seed: config.seed,
        replications,
    })
}

#[derive(Debug, Clone, Copy)]
enum EventKind {
    Arrival,
    Departure { station: usize, packet: usize },
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    seq: u64,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Reversed so the max-heap pops the earliest event; ties go to the event
// scheduled first.
impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

#[derive(Debug, Clone, Copy)]
struct Packet {
    born: f64,
    branch: usize,
    hop: usize,
}

#[derive(Debug, Default)]
struct StationState {
    busy: u32,
    waiting: VecDeque<usize>,
}

struct Replication<'a> {
    config: &'a SimConfig,
    rng: SimRng,
    now: f64,
    seq: u64,
    events: BinaryHeap<Event>,
    packets: Vec<Packet>,
    free: Vec<usize>,
    stations: Vec<StationState>,
    branch_cdf: Vec<f64>,
    branch_arrivals: Vec<u64>,
    in_system: u64,
    departures: u64,
    window_start: Option<f64>,
    area: f64,
    last_change: f64,
    response_sum: f64,
}

impl<'a> Replication<'a> {
    fn new(config: &'a SimConfig, index: u32) -> Self {
        let topology = &config.topology;
        let mut acc = 0.0;
        let branch_cdf = topology
            .branch_probabilities()
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Self {
            config,
            rng: stream_rng(config.seed, u64::from(index)),
            now: 0.0,
            seq: 0,
            events: BinaryHeap::new(),
            packets: Vec::new(),
            free: Vec::new(),
            stations: topology.stations().iter().map(|_| StationState::default()).collect(),
            branch_cdf,
            branch_arrivals: vec![0; topology.branches().len()],
            in_system: 0,
            departures: 0,
            window_start: None,
            area: 0.0,
            last_change: 0.0,
            response_sum: 0.0,
        }
    }

    fn schedule(&mut self, delay: f64, kind: EventKind) {
        self.events.push(Event {
            time: self.now + delay,
            seq: self.seq,
            kind,
        });
        self.seq += 1;
    }

    fn pick_branch(&mut self) -> usize {
        if self.branch_cdf.len() == 1 {
            return 0;
        }
        let u = open_unit(&mut self.rng);
        self.branch_cdf
            .iter()
            .position(|&c| u <= c)
            .unwrap_or(self.branch_cdf.len() - 1)
    }

    fn set_population(&mut self, population: u64) {
        if self.window_start.is_some() {
            self.area += self.in_system as f64 * (self.now - self.last_change);
        }
        self.last_change = self.now;
        self.in_system = population;
    }

    fn enter(&mut self, station: usize, packet: usize) -> Result<()> {
        let spec = self.config.topology.stations()[station];
        let state = &mut self.stations[station];
        if state.busy < spec.servers {
            state.busy += 1;
            let service = rng_exponential(spec.service_rate, &mut self.rng);
            self.schedule(service, EventKind::Departure { station, packet });
        } else {
            state.waiting.push_back(packet);
            if state.waiting.len() > self.config.queue_limit {
                return Err(Error::Diverged {
                    station,
                    length: state.waiting.len(),
                });
            }
        }
        Ok(())
    }

    fn on_arrival(&mut self) -> Result<()> {
        let gap = rng_exponential(self.config.arrival_rate, &mut self.rng);
        self.schedule(gap, EventKind::Arrival);

        let branch = self.pick_branch();
        self.branch_arrivals[branch] += 1;
        let packet = Packet {
            born: self.now,
            branch,
            hop: 0,
        };
        let id = match self.free.pop() {
            Some(id) => {
                self.packets[id] = packet;
                id
            }
            None => {
                self.packets.push(packet);
                self.packets.len() - 1
            }
        };
        self.set_population(self.in_system + 1);
        let first = self.config.topology.branches()[branch][0];
        self.enter(first, id)
    }

    /// Returns true once the measurement window is complete.
    fn on_departure(&mut self, station: usize, packet: usize) -> Result<bool> {
        let spec = self.config.topology.stations()[station];
        match self.stations[station].waiting.pop_front() {
            Some(next) => {
                let service = rng_exponential(spec.service_rate, &mut self.rng);
                self.schedule(service, EventKind::Departure { station, packet: next });
            }
            None => self.stations[station].busy -= 1,
        }

        let path = &self.config.topology.branches()[self.packets[packet].branch];
        self.packets[packet].hop += 1;
        let hop = self.packets[packet].hop;
        if hop < path.len() {
            let next = path[hop];
            self.enter(next, packet)?;
            return Ok(false);
        }

        let born = self.packets[packet].born;
        self.free.push(packet);
        self.set_population(self.in_system - 1);
        self.departures += 1;
        let warmup = self.config.warmup_departures;
        if self.departures <= warmup {
            if self.departures == warmup {
                self.window_start = Some(self.now);
            }
            return Ok(false);
        }
        self.response_sum += self.now - born;
        Ok(self.departures == warmup + self.config.measured_departures)
    }

    fn run(mut self) -> Result<ReplicationStats> {
        if self.config.warmup_departures == 0 {
            self.window_start = Some(0.0);
        }
        let first = rng_exponential(self.config.arrival_rate, &mut self.rng);
        self.schedule(first, EventKind::Arrival);
        while let Some(event) = self.events.pop() {
            self.now = event.time;
            let done = match event.kind {
                EventKind::Arrival => {
                    self.on_arrival()?;
                    false
                }
                EventKind::Departure { station, packet } => self.on_departure(station, packet)?,
            };
            if done {
                break;
            }
        }
        let start = self.window_start.unwrap_or(0.0);
        let span = self.now - start;
        let measured = self.config.measured_departures as f64;
        Ok(ReplicationStats {
            mean_response: self.response_sum / measured,
            mean_in_system: self.area / span,
            throughput: measured / span,
            branch_arrivals: self.branch_arrivals,
        })
    }
}

fn run_replication(config: &SimConfig, index: u32) -> Result<ReplicationStats> {
    Replication::new(config, index).run()
}
