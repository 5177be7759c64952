use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub tp: usize,
    pub fa: usize,
    /// Detection delay of each true positive, in time order.
    pub delays: Vec<usize>,
}

/// Greedy time-ordered matching. An alarm at `t` is a true positive when
/// some still unmatched drift `d` satisfies `d <= t <= d + tolerance`; the
/// earliest such drift is consumed. Every other alarm is a false alarm.
pub fn match_events(alarms: &[usize], drifts: &[usize], tolerance: usize) -> Matching {
    let mut alarms = alarms.to_vec();
    alarms.sort_unstable();
    let mut drifts = drifts.to_vec();
    drifts.sort_unstable();
    let mut used = vec![false; drifts.len()];
    let mut out = Matching {
        tp: 0,
        fa: 0,
        delays: Vec::new(),
    };
    for t in alarms {
        let hit = drifts
            .iter()
            .enumerate()
            .position(|(k, &d)| !used[k] && d <= t && t <= d + tolerance);
        match hit {
            Some(k) => {
                used[k] = true;
                out.tp += 1;
                out.delays.push(t - drifts[k]);
            }
            None => out.fa += 1,
        }
    }
    out
}
