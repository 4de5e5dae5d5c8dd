use alloc::vec::Vec;

use super::kappa::{kappa_unchecked, KappaData};
use super::outcome::Outcome;
use super::pairing::{factor_pairings, PairingPair};
use super::rank_one::rank_one_suite;
use super::relations::{multi_site, two_site};
use super::rtt::rtt_lemma;
use super::skew::{check_intertwining, skew_inverse, skew_outcomes, SkewData};
use super::system::{check_yang_baxter, detect_nu, RMatrixSystem};
use super::xy::{xy_outcomes, XYPair};
use crate::error::BmwError;
use crate::field::Field;
use crate::linalg::{rank, FieldMatrix};

/// Scalars and matrices read off a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived<F> {
    pub dim: usize,
    pub nu: F,
    pub mu: F,
    pub trace_c: Option<F>,
    pub trace_d: Option<F>,
    pub epsilon: Option<i8>,
    pub rank_k: Option<usize>,
    pub x: Option<FieldMatrix<F>>,
}

/// Ordered outcomes of the full pipeline. `aborted` is set when a
/// structural error stopped the run; the outcomes gathered so far are kept.
#[derive(Clone, Debug)]
pub struct Verification<F> {
    pub outcomes: Vec<Outcome<F>>,
    pub derived: Derived<F>,
    pub aborted: Option<BmwError>,
    pub kappa: KappaData<F>,
    pub skew: Option<SkewData<F>>,
    pub pairing: Option<PairingPair<F>>,
    pub xy: Option<XYPair<F>>,
}

impl<F: Field> Verification<F> {
    pub fn passed(&self) -> bool {
        self.aborted.is_none() && self.outcomes.iter().all(|o| o.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome<F>> {
        self.outcomes.iter().filter(|o| !o.pass)
    }

    pub fn outcome(&self, id: &str) -> Option<&Outcome<F>> {
        self.outcomes.iter().find(|o| o.id == id)
    }
}

/// Runs braid relations, ν detection, K̂, the BMW relations, the skew
/// inverse and its identities, the rank-one consequences, the pairings,
/// X/Y with reciprocity and the RTT lemma, in that order.
pub fn full_verification<F: Field>(sys: &RMatrixSystem<F>) -> Verification<F> {
    let kappa = kappa_unchecked(sys);
    let mut v = Verification {
        outcomes: Vec::new(),
        derived: Derived {
            dim: sys.dim(),
            nu: sys.nu().clone(),
            mu: kappa.mu.clone(),
            trace_c: None,
            trace_d: None,
            epsilon: None,
            rank_k: None,
            x: None,
        },
        aborted: None,
        kappa,
        skew: None,
        pairing: None,
        xy: None,
    };
    v.outcomes.push(check_yang_baxter(sys));
    let nu_eq = "nu read off the spectrum of R equals the configured nu";
    v.outcomes.push(match detect_nu(sys.r(), sys.q()) {
        Ok(found) => Outcome::from_scalars("nu.detected", nu_eq, &found, sys.nu()),
        Err(_) => Outcome::flag("nu.detected", nu_eq, false),
    });
    v.outcomes
        .extend(two_site(sys, &v.kappa).expect("consistent shapes"));
    v.outcomes
        .extend(multi_site(sys, &v.kappa).expect("consistent shapes"));

    let skew = match skew_inverse(sys.r()) {
        Ok(s) => s,
        Err(e) => {
            v.aborted = Some(e);
            return v;
        }
    };
    v.derived.trace_c = Some(skew.c.trace());
    v.derived.trace_d = Some(skew.d.trace());
    v.outcomes
        .extend(skew_outcomes(sys.r(), &skew).expect("consistent shapes"));
    v.outcomes.extend(check_intertwining(sys, &skew));
    v.outcomes.extend(rank_one_suite(sys, &skew, &v.kappa));
    v.skew = Some(skew);

    v.derived.rank_k = Some(rank(v.kappa.k.matrix()));
    let pair = match factor_pairings(&v.kappa) {
        Ok(p) => p,
        Err(e) => {
            v.aborted = Some(e);
            return v;
        }
    };
    v.outcomes.push(
        Outcome::from_equality(
            "pairing.factor",
            "K = gbar (x) g",
            &pair.operator(),
            &v.kappa.k,
        )
        .expect("same shape"),
    );
    v.outcomes.push(Outcome::from_scalars(
        "pairing.loop",
        "sum g^ij gbar_ij = mu",
        &pair.loop_value(),
        &v.kappa.mu,
    ));
    let (outs, xy) = xy_outcomes(&pair);
    v.outcomes.extend(outs);
    v.pairing = Some(pair);
    let Some(xy) = xy else {
        v.aborted = Some(BmwError::ReciprocityViolation("det X is not ±1".into()));
        return v;
    };
    v.derived.epsilon = Some(xy.epsilon);
    v.derived.x = Some(xy.x.clone());
    v.outcomes.push(rtt_lemma(&v.kappa, &xy));
    v.xy = Some(xy);
    v
}
