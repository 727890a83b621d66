use mlq_core::markov::RateParams;
use mlq_core::projection::Particle;
use mlq_core::{Bosonic, Fermionic, Mlq, Statistic};
use serde::{Deserialize, Serialize};

use super::checks::{self, Verdict};
use crate::error::{CliError, CliResult};
use crate::io::{format_rational, parse_rational, QueueDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    SigmaInvariance,
    PhiEqualsCtm,
    CtmComponents,
    TraceEqualsPartialCtm,
    FmStraight,
    Particlewise,
    RingInverse,
    RingWeight,
    Balance,
    ProjectionIdentity,
    SigmaCommutation,
    TwistedRingProjects,
    StationaryTasep,
    StationaryTazrp,
    KtazrpAgreement,
    MonteCarlo,
}

/// A replayable check instance. Only the fields the check needs are set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub check: CheckKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub queue: Option<QueueDocument>,
    /// Row index of a `σ_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub site: Option<usize>,
    /// Particle order as `[site, label]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<(usize, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jumps: Option<u64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckKind {
    /// The snake_case name used in witness JSON.
    pub fn name(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }
}

pub const MC_TOLERANCE: f64 = 0.02;

impl Witness {
    pub fn new(check: CheckKind) -> Self {
        Witness {
            check,
            queue: None,
            index: None,
            site: None,
            order: None,
            lambda: None,
            n: None,
            x: None,
            seed: None,
            jumps: None,
            detail: String::new(),
        }
    }

    pub fn queue<S: Statistic>(mut self, q: &Mlq<S>) -> Self {
        self.queue = Some(QueueDocument::from_mlq(q));
        self
    }

    pub fn index(mut self, i: usize) -> Self {
        self.index = Some(i);
        self
    }

    pub fn site(mut self, i: usize) -> Self {
        self.site = Some(i);
        self
    }

    pub fn order(mut self, order: &[Particle]) -> Self {
        self.order = Some(order.to_vec());
        self
    }

    pub fn model(mut self, lambda: &[u32], n: usize) -> Self {
        self.lambda = Some(lambda.to_vec());
        self.n = Some(n);
        self
    }

    pub fn x(mut self, x: &RateParams) -> Self {
        self.x = Some(x.as_slice().iter().map(format_rational).collect());
        self
    }

    pub fn seed(mut self, seed: u64, jumps: u64) -> Self {
        self.seed = Some(seed);
        self.jumps = Some(jumps);
        self
    }

    /// Records a failing verdict's detail; passing verdicts return `None`.
    pub fn verdict(mut self, v: Verdict) -> Option<Self> {
        match v {
            Verdict::Pass => None,
            Verdict::Fail(d) => {
                self.detail = d;
                Some(self)
            }
        }
    }

    fn need<T: Clone>(&self, field: &Option<T>, name: &str) -> CliResult<T> {
        field.clone().ok_or_else(|| CliError::input(format!("witness for {:?} needs `{name}`", self.check)))
    }

    fn rate_params(&self, n: usize) -> CliResult<RateParams> {
        match &self.x {
            None => Ok(RateParams::ones(n)),
            Some(xs) => Ok(RateParams::new(xs.iter().map(|s| parse_rational(s)).collect::<CliResult<Vec<_>>>()?)?),
        }
    }

    /// Re-runs the check this witness describes.
    pub fn replay(&self) -> CliResult<Verdict> {
        use CheckKind::*;
        let queue = || self.need(&self.queue, "queue");
        Ok(match self.check {
            SigmaInvariance | PhiEqualsCtm | CtmComponents | TraceEqualsPartialCtm | FmStraight | Particlewise => {
                let doc = queue()?;
                match doc.kind {
                    crate::io::QueueKind::Fermionic => self.replay_queue_check(&doc.to_mlq::<Fermionic>()?)?,
                    crate::io::QueueKind::Bosonic => self.replay_queue_check(&doc.to_mlq::<Bosonic>()?)?,
                }
            }
            RingInverse => {
                let site = self.need(&self.site, "site")?;
                match queue()?.to_any()? {
                    crate::io::AnyQueue::Fermionic(q) => checks::fermionic_ring_inverse(&q, site),
                    crate::io::AnyQueue::Bosonic(d) => {
                        checks::bosonic_ring_inverse(&d, site, &self.rate_params(d.n())?)
                    }
                }
            }
            RingWeight => {
                let d = queue()?.to_mlq::<Bosonic>()?;
                checks::bosonic_ring_weight(&d, self.need(&self.site, "site")?, &self.rate_params(d.n())?)
            }
            ProjectionIdentity => {
                let d = queue()?.to_mlq::<Bosonic>()?;
                checks::projection_identity(&d, &self.rate_params(d.n())?)
            }
            SigmaCommutation => {
                let d = queue()?.to_mlq::<Bosonic>()?;
                let x = self.rate_params(d.n())?;
                checks::sigma_commutation(&d, self.need(&self.index, "index")?, self.need(&self.site, "site")?, &x)
            }
            TwistedRingProjects => {
                checks::fermionic_ring_projects(&queue()?.to_mlq::<Fermionic>()?, self.need(&self.site, "site")?)
            }
            Balance => {
                let n = self.need(&self.n, "n")?;
                checks::bosonic_balance(&self.need(&self.lambda, "lambda")?, n, &self.rate_params(n)?)?
            }
            StationaryTasep => checks::stationary_tasep(&self.need(&self.lambda, "lambda")?, self.need(&self.n, "n")?)?.0,
            StationaryTazrp => {
                let n = self.need(&self.n, "n")?;
                checks::stationary_tazrp(&self.need(&self.lambda, "lambda")?, n, &self.rate_params(n)?)?.0
            }
            KtazrpAgreement => checks::ktazrp_agreement(&self.need(&self.lambda, "lambda")?, self.need(&self.n, "n")?)?,
            MonteCarlo => checks::monte_carlo(
                &self.need(&self.lambda, "lambda")?,
                self.need(&self.n, "n")?,
                self.need(&self.seed, "seed")?,
                self.need(&self.jumps, "jumps")?,
                MC_TOLERANCE,
            )?,
        })
    }

    fn replay_queue_check<S: Statistic>(&self, q: &Mlq<S>) -> CliResult<Verdict> {
        use CheckKind::*;
        Ok(match self.check {
            SigmaInvariance => checks::sigma_invariance(q, self.need(&self.index, "index")?),
            PhiEqualsCtm => checks::phi_equals_ctm(q),
            CtmComponents => checks::ctm_components(q, self.need(&self.index, "index")?),
            TraceEqualsPartialCtm => checks::trace_equals_partial_ctm(q),
            FmStraight => checks::fm_agrees(q),
            Particlewise => checks::particlewise(q, &self.need(&self.order, "order")?),
            _ => unreachable!("dispatched by the caller"),
        })
    }
}
