//! Builders for the benchmark cost functions.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::observable::{Observable, Pauli, PauliSum, PauliTerm};
use crate::state::StateVector;
use crate::{Error, Result};

/// Undirected simple graph on `n_vertices` sites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl LatticeGraph {
    /// Rejects self-loops, out-of-range vertices and duplicate edges (in either orientation).
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::Config(alloc::format!("self-loop on vertex {a}")));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::Config(alloc::format!(
                    "edge ({a}, {b}) outside {n_vertices} vertices"
                )));
            }
            let key = (a.min(b), a.max(b));
            if seen.contains(&key) {
                return Err(Error::Config(alloc::format!("duplicate edge ({a}, {b})")));
            }
            seen.push(key);
        }
        Ok(LatticeGraph { n_vertices, edges })
    }

    /// Ring `0–1–…–(n−1)–0`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(alloc::format!(
                "cyclic lattice needs at least 3 sites, got {n}"
            )));
        }
        LatticeGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    /// Open-boundary `rows × cols` grid, sites numbered row-major.
    pub fn grid(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols < 2 {
            return Err(Error::Config(alloc::format!(
                "degenerate {rows}x{cols} grid"
            )));
        }
        let site = |r: usize, c: usize| r * cols + c;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((site(r, c), site(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((site(r, c), site(r + 1, c)));
                }
            }
        }
        LatticeGraph::new(rows * cols, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// `J Σ_(i,j)∈E (XᵢXⱼ + YᵢYⱼ + ZᵢZⱼ) + h Σᵢ Zᵢ` over an arbitrary lattice.
pub fn heisenberg(graph: &LatticeGraph, j: f64, h: f64) -> Result<PauliSum> {
    let n = graph.n_vertices();
    let mut terms = Vec::with_capacity(3 * graph.edges().len() + n);
    for &(a, b) in graph.edges() {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let mut letters = vec![Pauli::I; n];
            letters[a] = p;
            letters[b] = p;
            terms.push(PauliTerm::new(j, letters)?);
        }
    }
    for site in 0..n {
        let mut letters = vec![Pauli::I; n];
        letters[site] = Pauli::Z;
        terms.push(PauliTerm::new(h, letters)?);
    }
    PauliSum::new(terms)
}

/// Heisenberg model on the cyclic chain of `n ≥ 3` sites.
pub fn heisenberg_1d(n: usize, j: f64, h: f64) -> Result<Observable> {
    Ok(heisenberg(&LatticeGraph::cycle(n)?, j, h)?.into())
}

/// Heisenberg model on the open `rows × cols` grid.
pub fn heisenberg_2d(rows: usize, cols: usize, j: f64, h: f64) -> Result<Observable> {
    Ok(heisenberg(&LatticeGraph::grid(rows, cols)?, j, h)?.into())
}

/// Qubit Hamiltonian of H₂ (STO-3G, bond length 0.742 Å), 15 Pauli terms on 4 qubits.
pub const H2_TERMS: [(&str, f64); 15] = [
    ("IIII", -0.09963387941370971),
    ("ZIII", 0.17110545123720233),
    ("IZII", 0.17110545123720233),
    ("ZZII", 0.16859349595532533),
    ("IIZI", -0.22250914236600539),
    ("ZIZI", 0.12051027989546245),
    ("IIIZ", -0.22250914236600539),
    ("ZIIZ", 0.16584090244119712),
    ("IZZI", 0.16584090244119712),
    ("IZIZ", 0.12051027989546245),
    ("IIZZ", 0.1743207725924201),
    ("YXXY", 0.04533062254573469),
    ("XYYX", 0.04533062254573469),
    ("XXYY", -0.04533062254573469),
    ("YYXX", -0.04533062254573469),
];

pub fn h2_hamiltonian() -> Observable {
    let terms = H2_TERMS
        .iter()
        .map(|&(letters, c)| PauliTerm::parse(c, letters))
        .collect::<Result<Vec<_>>>()
        .expect("H2 table is well formed");
    PauliSum::new(terms).expect("H2 terms share width 4").into()
}

/// `M = −|φ⟩⟨φ|`, so that `⟨M⟩ = −F(φ, ψ) = T² − 1`.
pub fn projector_cost(target: StateVector) -> Result<Observable> {
    let norm = target.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Invariant(alloc::format!(
            "projector target has squared norm {norm}"
        )));
    }
    Ok(Observable::Projector { target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn terms_of(obs: &Observable) -> &PauliSum {
        match obs {
            Observable::PauliSum(s) => s,
            _ => panic!("expected Pauli sum"),
        }
    }

    #[test]
    fn term_counts() {
        assert_eq!(terms_of(&heisenberg_1d(5, 1.0, 1.0).unwrap()).terms().len(), 20);
        let g = LatticeGraph::grid(2, 3).unwrap();
        assert_eq!(g.edges().len(), 7);
        assert_eq!(terms_of(&heisenberg_2d(2, 3, 1.0, 1.0).unwrap()).terms().len(), 27);
        assert_eq!(LatticeGraph::grid(3, 5).unwrap().edges().len(), 3 * 4 + 5 * 2);
    }

    #[test]
    fn degenerate_lattices() {
        assert!(matches!(heisenberg_1d(2, 1.0, 1.0), Err(Error::Config(_))));
        assert!(matches!(heisenberg_2d(1, 1, 1.0, 1.0), Err(Error::Config(_))));
        assert!(matches!(heisenberg_2d(0, 4, 1.0, 1.0), Err(Error::Config(_))));
        assert!(LatticeGraph::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(LatticeGraph::new(3, vec![(2, 2)]).is_err());
    }

    #[test]
    fn open_row_is_chain_minus_wraparound() {
        let row = LatticeGraph::grid(1, 6).unwrap();
        let ring = LatticeGraph::cycle(6).unwrap();
        let mut open: Vec<_> = ring
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| !(a == 5 && b == 0))
            .collect();
        open.sort();
        let mut got = row.edges().to_vec();
        got.sort();
        assert_eq!(got, open);
    }

    #[test]
    fn h2_table() {
        let h = h2_hamiltonian();
        let s = terms_of(&h);
        assert_eq!(s.terms().len(), 15);
        assert_eq!(s.n_qubits(), 4);
        assert_eq!(s.coefficient_of("IIII"), Some(-0.09963387941370971));
        assert_eq!(s.coefficient_of("YXXY"), Some(0.04533062254573469));
    }

    #[test]
    fn zero_state_energy_of_chain() {
        // ZZ and Z give +1 on |0…0⟩, XX and YY vanish
        let h = heisenberg_1d(5, 1.0, 1.0).unwrap();
        let s = StateVector::zero_state(5).unwrap();
        assert!((h.expectation(&s).unwrap() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn projector_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi = StateVector::random(2, &mut rng).unwrap();
        let m = projector_cost(phi.clone()).unwrap();
        assert!((m.expectation(&phi).unwrap() + 1.0).abs() < 1e-12);

        let zero = StateVector::zero_state(1).unwrap();
        let one = StateVector::from_amplitudes(vec![
            num_complex::Complex64::new(0.0, 0.0),
            num_complex::Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        let m = projector_cost(zero).unwrap();
        assert_eq!(m.expectation(&one).unwrap(), 0.0);
    }
}
