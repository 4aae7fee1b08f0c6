//! Cost operators: weighted Pauli strings and rank-1 projectors.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::state::StateVector;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `coefficient · P₀ ⊗ P₁ ⊗ … ⊗ Pₙ₋₁`, with `letters[k]` acting on qubit `k`.
///
/// The bit masks are cached at construction: `x_mask` holds the qubits that are
/// flipped (X or Y), `z_mask` the ones that pick up a sign (Z or Y).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PauliTermRepr", into = "PauliTermRepr")]
pub struct PauliTerm {
    coefficient: f64,
    letters: Vec<Pauli>,
    x_mask: usize,
    z_mask: usize,
    n_y: u32,
}

#[derive(Serialize, Deserialize)]
struct PauliTermRepr {
    coeff: f64,
    letters: String,
}

impl TryFrom<PauliTermRepr> for PauliTerm {
    type Error = Error;
    fn try_from(r: PauliTermRepr) -> Result<Self> {
        PauliTerm::parse(r.coeff, &r.letters)
    }
}

impl From<PauliTerm> for PauliTermRepr {
    fn from(t: PauliTerm) -> Self {
        PauliTermRepr {
            coeff: t.coefficient,
            letters: t.letters.iter().map(|p| p.as_char()).collect(),
        }
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·", self.coefficient)?;
        for p in &self.letters {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl PauliTerm {
    pub fn new(coefficient: f64, letters: Vec<Pauli>) -> Result<Self> {
        let n = letters.len();
        if n == 0 || n > crate::state::MAX_QUBITS {
            return Err(Error::Config(alloc::format!("Pauli string of width {n}")));
        }
        if !coefficient.is_finite() {
            return Err(Error::Config("non-finite Pauli coefficient".into()));
        }
        let mut x_mask = 0;
        let mut z_mask = 0;
        let mut n_y = 0;
        for (k, p) in letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - k);
            match p {
                Pauli::I => {}
                Pauli::X => x_mask |= bit,
                Pauli::Z => z_mask |= bit,
                Pauli::Y => {
                    x_mask |= bit;
                    z_mask |= bit;
                    n_y += 1;
                }
            }
        }
        Ok(PauliTerm {
            coefficient,
            letters,
            x_mask,
            z_mask,
            n_y,
        })
    }

    /// Parses a letter string such as `"XXIZ"`.
    pub fn parse(coefficient: f64, letters: &str) -> Result<Self> {
        let letters = letters
            .chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::Config(alloc::format!("invalid Pauli letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PauliTerm::new(coefficient, letters)
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn width(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// `i^{n_y}` from writing each Y as `iXZ`.
    fn y_phase(&self) -> Complex64 {
        match self.n_y % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// `⟨ψ|P|ψ⟩` without the coefficient.
    pub(crate) fn unweighted_expectation(&self, amps: &[Complex64]) -> f64 {
        if self.x_mask == 0 {
            return amps
                .iter()
                .enumerate()
                .map(|(b, a)| {
                    let w = a.norm_sqr();
                    if (b & self.z_mask).count_ones() % 2 == 0 {
                        w
                    } else {
                        -w
                    }
                })
                .sum();
        }
        // P|b⟩ = i^{n_y} (-1)^{|b ∧ z|} |b ⊕ x⟩
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, a) in amps.iter().enumerate() {
            let term = amps[b ^ self.x_mask].conj() * a;
            if (b & self.z_mask).count_ones() % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        (acc * self.y_phase()).re
    }

    /// `out += coefficient · P v`.
    pub(crate) fn apply_add(&self, v: &[Complex64], out: &mut [Complex64]) {
        let phase = self.y_phase() * self.coefficient;
        for (b, a) in v.iter().enumerate() {
            let s = if (b & self.z_mask).count_ones() % 2 == 0 {
                phase
            } else {
                -phase
            };
            out[b ^ self.x_mask] += s * a;
        }
    }
}

/// Real-weighted sum of equal-width Pauli strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PauliSumRepr", into = "PauliSumRepr")]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

#[derive(Serialize, Deserialize)]
struct PauliSumRepr {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl TryFrom<PauliSumRepr> for PauliSum {
    type Error = Error;
    fn try_from(r: PauliSumRepr) -> Result<Self> {
        let sum = PauliSum::new(r.terms)?;
        if sum.n_qubits != r.n_qubits {
            return Err(Error::Shape {
                expected: r.n_qubits,
                actual: sum.n_qubits,
            });
        }
        Ok(sum)
    }
}

impl From<PauliSum> for PauliSumRepr {
    fn from(s: PauliSum) -> Self {
        PauliSumRepr {
            n_qubits: s.n_qubits,
            terms: s.terms,
        }
    }
}

impl PauliSum {
    pub fn new(terms: Vec<PauliTerm>) -> Result<Self> {
        let n_qubits = terms
            .first()
            .map(PauliTerm::width)
            .ok_or_else(|| Error::Config("Pauli sum needs at least one term".into()))?;
        for t in &terms {
            if t.width() != n_qubits {
                return Err(Error::Shape {
                    expected: n_qubits,
                    actual: t.width(),
                });
            }
        }
        Ok(PauliSum { n_qubits, terms })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    /// Coefficient of the term with the given letters, summed over duplicates.
    pub fn coefficient_of(&self, letters: &str) -> Option<f64> {
        let mut found = None;
        for t in &self.terms {
            if t.letters.iter().map(|p| p.as_char()).eq(letters.chars()) {
                *found.get_or_insert(0.0) += t.coefficient;
            }
        }
        found
    }

    /// `out = H v`, matrix-free.
    pub fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        for t in &self.terms {
            t.apply_add(v, out);
        }
    }
}

impl FromStr for PauliSum {
    type Err = Error;

    /// Parses `"1.0*XX + -0.5*ZI"`-style sums.
    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for chunk in s.split('+') {
            let chunk = chunk.trim();
            let (coeff, letters) = chunk
                .split_once('*')
                .ok_or_else(|| Error::Config(alloc::format!("term {chunk:?} lacks '*'")))?;
            let coeff: f64 = coeff
                .trim()
                .parse()
                .map_err(|_| Error::Config(alloc::format!("bad coefficient in {chunk:?}")))?;
            terms.push(PauliTerm::parse(coeff, letters.trim())?);
        }
        PauliSum::new(terms)
    }
}

/// Hermitian cost operator `M̂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    PauliSum(PauliSum),
    /// `M = −|φ⟩⟨φ|`.
    Projector { target: StateVector },
}

impl From<PauliSum> for Observable {
    fn from(s: PauliSum) -> Self {
        Observable::PauliSum(s)
    }
}

impl Observable {
    pub fn n_qubits(&self) -> usize {
        match self {
            Observable::PauliSum(s) => s.n_qubits(),
            Observable::Projector { target } => target.n_qubits(),
        }
    }

    fn check_width(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits() {
            return Err(Error::Shape {
                expected: self.n_qubits(),
                actual: state.n_qubits(),
            });
        }
        Ok(())
    }

    /// Exact `Tr(M ρ)` for the pure state `ρ = |ψ⟩⟨ψ|`.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        self.check_width(state)?;
        Ok(match self {
            Observable::PauliSum(sum) => sum
                .terms
                .iter()
                .map(|t| t.coefficient * t.unweighted_expectation(state.amplitudes()))
                .sum(),
            Observable::Projector { target } => -target.fidelity(state)?,
        })
    }

    /// Shot-noise estimate with `shots_per_term` binomial draws for every
    /// non-identity term; the projector is sampled as one Bernoulli term whose
    /// success probability is the fidelity.
    pub fn estimate_with_shots<R: Rng + ?Sized>(
        &self,
        state: &StateVector,
        shots_per_term: u64,
        rng: &mut R,
    ) -> Result<f64> {
        self.check_width(state)?;
        if shots_per_term == 0 {
            return Err(Error::Config("shots per term must be at least 1".into()));
        }
        let shots = shots_per_term as f64;
        match self {
            Observable::PauliSum(sum) => {
                let mut total = 0.0;
                for t in &sum.terms {
                    if t.is_identity() {
                        total += t.coefficient;
                        continue;
                    }
                    let e = t.unweighted_expectation(state.amplitudes());
                    let k = sample_binomial(shots_per_term, 0.5 * (1.0 + e), rng);
                    total += t.coefficient * (2.0 * k / shots - 1.0);
                }
                Ok(total)
            }
            Observable::Projector { target } => {
                let f = target.fidelity(state)?;
                let k = sample_binomial(shots_per_term, f, rng);
                Ok(-k / shots)
            }
        }
    }
}

fn sample_binomial<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> f64 {
    let p = p.clamp(0.0, 1.0);
    // p is clamped into [0, 1], the only failure mode of Binomial::new
    let dist = Binomial::new(n, p).expect("probability in [0, 1]");
    dist.sample(rng) as f64
}
