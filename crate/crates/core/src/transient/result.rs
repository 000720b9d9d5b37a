use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlState {
    Voltage,
    Current,
}

impl ControlState {
    pub fn as_str(&self) -> &'static str {
        match self {
            ControlState::Voltage => "voltage",
            ControlState::Current => "current",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlowupReason {
    ThetaCapExceeded,
    DtUnderflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlowupReport {
    pub detected: bool,
    /// Last accepted time.
    pub t_estimate: f64,
    pub theta_max_at_stop: f64,
    pub reason: BlowupReason,
}

/// Full profile at a requested time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub time: f64,
    pub theta: Vec<f64>,
    /// Electric potential on `potential_nodes` (axial positions in
    /// `[-1/2, 1/2]`). Empty for the lumped model.
    pub potential: Vec<f64>,
}

/// Time series of a transient solve, one entry per accepted step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransientResult {
    pub times: Vec<f64>,
    pub theta_min: Vec<f64>,
    pub theta_max: Vec<f64>,
    #[serde(rename = "V")]
    pub voltage: Vec<f64>,
    #[serde(rename = "I")]
    pub current: Vec<f64>,
    #[serde(rename = "P")]
    pub power: Vec<f64>,
    #[serde(rename = "control_mode")]
    pub control: Vec<ControlState>,
    pub switch_time: Option<f64>,
    #[serde(rename = "profile_snapshots")]
    pub snapshots: Vec<Snapshot>,
    pub blowup: Option<BlowupReport>,
    pub final_state: Vec<f64>,
    /// Positions of the entries of `final_state` and snapshot profiles.
    pub nodes: Vec<f64>,
    pub potential_nodes: Vec<f64>,
}

impl TransientResult {
    pub(crate) fn new(nodes: Vec<f64>, potential_nodes: Vec<f64>) -> Self {
        Self {
            times: Vec::new(),
            theta_min: Vec::new(),
            theta_max: Vec::new(),
            voltage: Vec::new(),
            current: Vec::new(),
            power: Vec::new(),
            control: Vec::new(),
            switch_time: None,
            snapshots: Vec::new(),
            blowup: None,
            final_state: Vec::new(),
            nodes,
            potential_nodes,
        }
    }

    pub(crate) fn push(&mut self, t: f64, theta: &[f64], v: f64, i: f64, mode: ControlState) {
        let (lo, hi) = theta.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
        self.times.push(t);
        self.theta_min.push(lo);
        self.theta_max.push(hi);
        self.voltage.push(v);
        self.current.push(i);
        self.power.push(i * v);
        self.control.push(mode);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn blew_up(&self) -> bool {
        self.blowup.is_some_and(|b| b.detected)
    }

    pub fn final_time(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }
}
