//! The mass-moving procedure itself, run on an exact ledger of point masses.
//!
//! Each step moves the current estimate one rung of the `r^(n-1)/s^n` ladder
//! toward the ledger's center of mass by merging two draws into a new
//! cluster at the landing point. Draws are fractions of the available mass,
//! so no cluster is ever emptied and the center of mass never moves.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::engine::{error_bound, term_magnitude, ExpansionRatio};
use crate::error::{Error, Result};
use crate::numerics::{rat, sign_of, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassCluster {
    pub position: Rational,
    pub mass: Rational,
}

/// Point masses keyed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassLedger {
    clusters: BTreeMap<Rational, Rational>,
    total_mass: Rational,
    target_cm: Rational,
    current_estimate: Rational,
    steps_taken: u32,
}

/// What one step physically did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// `mass_a` from `from_a` and `mass_b` from `from_b` merged at `to`.
    Merge {
        mass_a: Rational,
        from_a: Rational,
        mass_b: Rational,
        from_b: Rational,
        to: Rational,
    },
    /// Equal masses pushed apart symmetrically so their joint CM is unchanged.
    Push {
        mass: Rational,
        from_a: Rational,
        to_a: Rational,
        from_b: Rational,
        to_b: Rational,
    },
    /// A cluster already sits on the landing point.
    Hold { at: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub step: u32,
    pub action: Move,
    pub estimate: Rational,
}

impl fmt::Display for StepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: ", self.step)?;
        match &self.action {
            Move::Merge {
                mass_a,
                from_a,
                mass_b,
                from_b,
                to,
            } => write!(f, "move {mass_a}@{from_a} + {mass_b}@{from_b} -> {to}")?,
            Move::Push {
                mass,
                from_a,
                to_a,
                from_b,
                to_b,
            } => write!(f, "push {mass}@{from_a} -> {to_a} + {mass}@{from_b} -> {to_b}")?,
            Move::Hold { at } => write!(f, "hold @{at}")?,
        }
        write!(f, " ; estimate={}", self.estimate)
    }
}

/// Two clusters at 0 and 1. The estimate starts on the heavier one (0 on ties).
pub fn ledger_init(mass_at_zero: Rational, mass_at_one: Rational) -> Result<MassLedger> {
    if mass_at_zero.is_negative() || mass_at_one.is_negative() {
        return Err(Error::InvalidArgument("masses must be non-negative".into()));
    }
    let total_mass = &mass_at_zero + &mass_at_one;
    if total_mass.is_zero() {
        return Err(Error::EmptySystem);
    }
    let target_cm = &mass_at_one / &total_mass;
    let current_estimate = if mass_at_one > mass_at_zero {
        Rational::one()
    } else {
        Rational::zero()
    };
    let mut clusters = BTreeMap::new();
    for (pos, m) in [(Rational::zero(), mass_at_zero), (Rational::one(), mass_at_one)] {
        if m.is_positive() {
            clusters.insert(pos, m);
        }
    }
    Ok(MassLedger {
        clusters,
        total_mass,
        target_cm,
        current_estimate,
        steps_taken: 0,
    })
}

impl MassLedger {
    pub fn clusters(&self) -> Vec<MassCluster> {
        self.clusters
            .iter()
            .map(|(p, m)| MassCluster {
                position: p.clone(),
                mass: m.clone(),
            })
            .collect()
    }

    pub fn total_mass(&self) -> &Rational {
        &self.total_mass
    }

    pub fn target_cm(&self) -> &Rational {
        &self.target_cm
    }

    pub fn current_estimate(&self) -> &Rational {
        &self.current_estimate
    }

    /// Sum of all cluster masses, recomputed from the clusters.
    pub fn mass_sum(&self) -> Rational {
        self.clusters.values().fold(Rational::zero(), |acc, m| acc + m)
    }

    /// Mass-weighted mean position, recomputed from the clusters.
    pub fn cm(&self) -> Rational {
        let moment = self.clusters.iter().fold(Rational::zero(), |acc, (p, m)| acc + p * m);
        moment / self.mass_sum()
    }

    fn add(&mut self, pos: Rational, mass: &Rational) {
        *self.clusters.entry(pos).or_insert_with(Rational::zero) += mass;
    }

    fn take(&mut self, pos: &Rational, mass: &Rational) {
        let m = self.clusters.get_mut(pos).expect("drawing from an existing cluster");
        *m -= mass;
        if m.is_zero() {
            self.clusters.remove(pos);
        }
    }

    fn mass_at(&self, pos: &Rational) -> Rational {
        self.clusters.get(pos).cloned().unwrap_or_else(Rational::zero)
    }

    /// Fails with `NonConvergent` if the ladder after `n` steps is too short.
    fn check_reach(&self, ratio: &ExpansionRatio, n: u32) -> Result<()> {
        if (&self.target_cm - &self.current_estimate).abs() > error_bound(ratio, n) {
            Err(Error::NonConvergent { step: n as usize })
        } else {
            Ok(())
        }
    }

    /// One step toward the ledger CM. Returns `None` once the estimate is exact.
    ///
    /// `draw` is the fraction of the largest admissible draw actually taken;
    /// any value in `(0, 1)` yields the same estimates.
    pub fn step(&mut self, ratio: &ExpansionRatio, draw: &Rational) -> Result<Option<StepRecord>> {
        let b = self.current_estimate.clone();
        let sigma = sign_of(&(self.cm() - &b));
        if sigma == 0 {
            return Ok(None);
        }
        let n = self.steps_taken + 1;
        let rung = term_magnitude(ratio, n);
        let landing = if sigma > 0 { &b + &rung } else { &b - &rung };
        let on_target_side = |p: &Rational| sign_of(&(p - &b)) == sigma;

        let beyond = if sigma > 0 {
            self.clusters.range(landing.clone()..).next()
        } else {
            self.clusters.range(..=landing.clone()).next_back()
        };
        let action = match beyond.map(|(p, _)| p.clone()) {
            Some(a) if a == landing => Move::Hold { at: a },
            Some(a) => {
                let d = (&a - &b).abs();
                let alpha = rung.clone();
                let beta = &d - &rung;
                let limit = (self.mass_at(&a) / &alpha).min(self.mass_at(&b) / &beta);
                let u = limit * draw;
                let (mass_a, mass_b) = (&alpha * &u, &beta * &u);
                self.take(&a, &mass_a);
                self.take(&b, &mass_b);
                self.add(landing.clone(), &(&mass_a + &mass_b));
                Move::Merge {
                    mass_a,
                    from_a: a,
                    mass_b,
                    from_b: b.clone(),
                    to: landing.clone(),
                }
            }
            None => {
                let far = self
                    .clusters
                    .keys()
                    .filter(|p| on_target_side(p))
                    .max_by(|x, y| if sigma > 0 { x.cmp(y) } else { y.cmp(x) })
                    .cloned()
                    .ok_or_else(|| Error::NoBracketCluster(format!("{b} at step {n}")))?;
                let u = self.mass_at(&far).min(self.mass_at(&b)) * draw;
                let to_b = &b + (&far - &landing);
                self.take(&far, &u);
                self.take(&b, &u);
                self.add(landing.clone(), &u);
                self.add(to_b.clone(), &u);
                Move::Push {
                    mass: u,
                    from_a: far,
                    to_a: landing.clone(),
                    from_b: b.clone(),
                    to_b,
                }
            }
        };
        self.current_estimate = landing.clone();
        self.steps_taken = n;
        Ok(Some(StepRecord {
            step: n,
            action,
            estimate: landing,
        }))
    }
}

/// Result of a simulation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simulation {
    pub estimates: Vec<Rational>,
    pub terminated: bool,
    pub trace: Vec<StepRecord>,
    pub ledger: MassLedger,
}

/// Runs up to `steps` ledger steps with the default half draw.
pub fn simulate(mass_at_zero: Rational, mass_at_one: Rational, ratio: &ExpansionRatio, steps: usize) -> Result<Simulation> {
    simulate_with_draw(mass_at_zero, mass_at_one, ratio, steps, &rat(1, 2))
}

pub fn simulate_with_draw(
    mass_at_zero: Rational,
    mass_at_one: Rational,
    ratio: &ExpansionRatio,
    steps: usize,
    draw: &Rational,
) -> Result<Simulation> {
    if !(draw.is_positive() && draw < &Rational::one()) {
        return Err(Error::InvalidArgument(format!("draw fraction {draw} must lie in (0, 1)")));
    }
    let mut ledger = ledger_init(mass_at_zero, mass_at_one)?;
    let mut sim = Simulation {
        estimates: Vec::new(),
        terminated: false,
        trace: Vec::new(),
        ledger: ledger.clone(),
    };
    ledger.check_reach(ratio, 0)?;
    for _ in 0..steps {
        match ledger.step(ratio, draw)? {
            None => {
                sim.terminated = true;
                break;
            }
            Some(record) => {
                ledger.check_reach(ratio, record.step)?;
                sim.estimates.push(record.estimate.clone());
                sim.trace.push(record);
            }
        }
    }
    if !sim.terminated && ledger.current_estimate == ledger.target_cm {
        sim.terminated = true;
    }
    sim.ledger = ledger;
    Ok(sim)
}
