use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bmw::{detect_nu, kappa_unchecked, two_site, PairingPair, RMatrixSystem};
use crate::error::FamilyError;
use crate::field::Field;
use crate::linalg::TensorOperator;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    So,
    Sp,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::So => "so",
            Series::Sp => "sp",
        })
    }
}

impl FromStr for Series {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "so" => Ok(Series::So),
            "sp" => Ok(Series::Sp),
            other => Err(FamilyError::BadDimension(format!(
                "unknown series {other:?}"
            ))),
        }
    }
}

/// ρ-vector and sign vector of a standard family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub series: Series,
    pub n: usize,
    /// 2ρ_i, i.e. q^{ρ_i} = s^{rho_s[i]}.
    pub rho_s: Vec<i32>,
    pub signs: Vec<i8>,
}

impl FamilySpec {
    /// The flipped 1-based index i' = N + 1 − i.
    pub fn flip(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    /// q^{ρ_i} for 1-based i.
    pub fn q_rho(&self, i: usize) -> Scalar {
        Scalar::s_pow(self.rho_s[i - 1])
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i - 1]
    }

    /// q^{1−N} for so, −q^{−N−1} for sp.
    pub fn expected_nu(&self) -> Scalar {
        let n = self.n as i32;
        match self.series {
            Series::So => Scalar::q_pow(1 - n),
            Series::Sp => -Scalar::q_pow(-n - 1),
        }
    }

    pub fn label(&self) -> String {
        format!("{}_{}", self.series, self.n)
    }
}

pub fn family_spec(series: Series, n: usize) -> Result<FamilySpec, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadDimension(format!(
            "N must be at least 2, got {n}"
        )));
    }
    if series == Series::Sp && n % 2 == 1 {
        return Err(FamilyError::BadDimension(format!(
            "sp needs even N, got {n}"
        )));
    }
    let half = n / 2;
    let mut rho_s = alloc::vec![0i32; n];
    for i in 1..=half {
        let h = half as i32;
        let i = i as i32;
        rho_s[(i - 1) as usize] = match (series, n % 2) {
            (Series::So, 1) => 2 * (h - i) + 1,
            (Series::So, _) => 2 * (h - i),
            (Series::Sp, _) => 2 * (h - i + 1),
        };
    }
    for i in 0..half {
        rho_s[n - 1 - i] = -rho_s[i];
    }
    let signs = (1..=n)
        .map(|i| match series {
            Series::So => 1,
            Series::Sp if i <= half => 1,
            Series::Sp => -1,
        })
        .collect();
    Ok(FamilySpec {
        series,
        n,
        rho_s,
        signs,
    })
}

/// Entry list of the standard R̂ with `e_ij v_j = v_i`; `weight(out, in)`
/// multiplies each entry (1 for the untwisted matrix).
pub(crate) fn standard_entries(
    spec: &FamilySpec,
    mut weight: impl FnMut([usize; 2], [usize; 2]) -> Scalar,
) -> Vec<(Vec<usize>, Vec<usize>, Scalar)> {
    let n = spec.n;
    let lam = Scalar::lambda();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let e = i32::from(i == j) - i32::from(j == spec.flip(i));
            let w = weight([i, j], [j, i]);
            out.push((alloc::vec![i, j], alloc::vec![j, i], Scalar::q_pow(e) * w));
        }
    }
    for i in 1..=n {
        for j in 1..i {
            out.push((
                alloc::vec![j, i],
                alloc::vec![j, i],
                lam.clone() * weight([j, i], [j, i]),
            ));
            let (ip, jp) = (spec.flip(i), spec.flip(j));
            let sign = i64::from(spec.sign(i) * spec.sign(j));
            let c = -(&lam * &Scalar::s_pow(spec.rho_s[i - 1] - spec.rho_s[j - 1]))
                * Scalar::from_int(sign);
            out.push((
                alloc::vec![ip, i],
                alloc::vec![j, jp],
                c * weight([ip, i], [j, jp]),
            ));
        }
    }
    out
}

pub fn standard_rmatrix(spec: &FamilySpec) -> TensorOperator<Scalar> {
    TensorOperator::from_entries(spec.n, 2, standard_entries(spec, |_, _| Scalar::one()))
        .expect("labels in range")
}

/// Runs the two-site relations and cross-checks ν against detection.
pub(crate) fn self_check(
    spec: &FamilySpec,
    sys: &RMatrixSystem<Scalar>,
) -> Result<(), FamilyError> {
    let detected = detect_nu(sys.r(), sys.q())
        .map_err(|e| FamilyError::BuildSelfCheckFailed(format!("{e}")))?;
    if detected != spec.expected_nu() {
        return Err(FamilyError::BuildSelfCheckFailed(format!(
            "{}: detected nu = {detected}, expected {}",
            spec.label(),
            spec.expected_nu()
        )));
    }
    let kappa = kappa_unchecked(sys);
    let outcomes = two_site(sys, &kappa)?;
    if let Some(bad) = outcomes.iter().find(|o| !o.pass) {
        return Err(FamilyError::BuildSelfCheckFailed(format!(
            "{}: {} fails",
            spec.label(),
            bad.equation
        )));
    }
    Ok(())
}

/// The standard R-matrix system of the given family, validated by the
/// two-site BMW relations. For sp, ν is taken from the spectrum of R̂.
pub fn build_standard(series: Series, n: usize) -> Result<RMatrixSystem<Scalar>, FamilyError> {
    let spec = family_spec(series, n)?;
    let r = standard_rmatrix(&spec);
    let nu = match series {
        Series::So => spec.expected_nu(),
        Series::Sp => detect_nu(&r, &Scalar::q())
            .map_err(|e| FamilyError::BuildSelfCheckFailed(format!("{e}")))?,
    };
    let sys = RMatrixSystem::new(Scalar::q(), r, nu)?;
    self_check(&spec, &sys)?;
    Ok(sys)
}

/// ḡ_{ij} = δ_{ij'}ε_i q^{−ρ_i} and g^{ij} = δ^{ij'}ε_{i'}q^{−ρ_i}.
pub fn expected_pairings(spec: &FamilySpec) -> PairingPair<Scalar> {
    twisted_pairings(spec, |_, _| Scalar::one())
}

pub(crate) fn twisted_pairings(
    spec: &FamilySpec,
    d: impl Fn(usize, usize) -> Scalar,
) -> PairingPair<Scalar> {
    let n = spec.n;
    let mut g = alloc::vec![alloc::vec![Scalar::zero(); n]; n];
    let mut gbar = g.clone();
    for i in 1..=n {
        let ip = spec.flip(i);
        let base = Scalar::s_pow(-spec.rho_s[i - 1]);
        let dii = d(i, ip);
        gbar[i - 1][ip - 1] = &base * &Scalar::from_int(spec.sign(i).into()) * dii.clone();
        let dinv = Field::inv(&dii).expect("twist entries are nonzero");
        g[i - 1][ip - 1] = base * Scalar::from_int(spec.sign(ip).into()) * dinv;
    }
    PairingPair {
        g,
        gbar,
        pivot: None,
    }
}
