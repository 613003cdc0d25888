//! Matrix identities expanded into generator relations, and the structural
//! verification procedures (Yang–Baxter, contraction, Hopf axioms, classical
//! limit).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::freealg::{
    canonicalize_relations, AlgMatrix, Matrix, NcPoly, Relation, RelationSet, RingElem, RingMatrix,
    Symbol, UnitRule, Word,
};
use crate::scalar::{rat, BaseScalar, CkScalar, JSignature, Monomial, Rational};
use crate::structures::{Basis, StructureBundle};

/// How coefficients of an expanded identity are treated.
#[derive(Clone, Debug)]
pub enum Mode {
    /// Formal `j`'s, entries kept whole.
    Formal,
    /// Formal `j`'s; every entry is split into its `j`-homogeneous parts and
    /// each part divided by its `j`-monomial. This presents a smaller quotient
    /// than [`Mode::Formal`]: the split relations are not annihilated by the
    /// duality pairing.
    SplitByJ,
    /// Coefficients specialized under a signature.
    Specialized(JSignature),
}

impl Mode {
    fn rule(&self) -> UnitRule {
        match self {
            Mode::Specialized(sig) => UnitRule::Specialized(sig.clone()),
            _ => UnitRule::Formal,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Both,
    /// `G C Gᵗ = C`.
    Primal,
    /// `Gᵗ C⁻¹ G = C⁻¹`.
    Inverse,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub location: String,
    pub residual: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub name: String,
    pub status: Status,
    pub witness: Vec<Witness>,
    pub timing: Duration,
}

impl VerificationReport {
    fn from_witness(name: &str, witness: Vec<Witness>, start: Instant) -> Self {
        let status = if witness.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            name: name.to_string(),
            status,
            witness,
            timing: start.elapsed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Merges sub-reports; witness locations are prefixed by the sub-check name.
    pub fn combine(name: &str, parts: &[VerificationReport]) -> Self {
        let witness = parts
            .iter()
            .flat_map(|p| {
                p.witness.iter().map(move |w| Witness {
                    location: format!("{}: {}", p.name, w.location),
                    residual: w.residual.clone(),
                })
            })
            .collect::<Vec<_>>();
        let status = if witness.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            name: name.to_string(),
            status,
            witness,
            timing: parts.iter().map(|p| p.timing).sum(),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({:.3}s)",
            self.name,
            self.status.name(),
            self.timing.as_secs_f64()
        )?;
        for w in &self.witness {
            write!(f, "\n  at {}: {}", w.location, w.residual)?;
        }
        Ok(())
    }
}

/// Residual positions of a matrix that should vanish (one-based labels).
fn matrix_witness<T: RingElem + fmt::Display>(m: &Matrix<T>, limit: usize) -> Vec<Witness> {
    m.entries()
        .filter(|(_, _, x)| !x.is_zero_elem())
        .take(limit)
        .map(|(i, j, x)| Witness {
            location: format!("({},{})", i + 1, j + 1),
            residual: x.to_string(),
        })
        .collect()
}

const WITNESS_LIMIT: usize = 8;

/// Turns the entries of a matrix that must vanish into canonical relations.
pub fn matrix_relations(m: &AlgMatrix, label: &str, mode: &Mode) -> Result<RelationSet> {
    let mut out = Vec::new();
    for (i, j, p) in m.entries() {
        if p.is_zero() {
            continue;
        }
        let lab = format!("{label}({},{})", i + 1, j + 1);
        match mode {
            Mode::SplitByJ => {
                for part in p.split_by_j() {
                    out.push(Relation {
                        label: lab.clone(),
                        poly: strip_j(&part),
                    });
                }
            }
            Mode::Formal => out.push(Relation {
                label: lab,
                poly: p.clone(),
            }),
            Mode::Specialized(sig) => {
                out.push(Relation {
                    label: lab,
                    poly: p.try_map_coeffs(|c| c.specialize(sig))?,
                });
            }
        }
    }
    Ok(canonicalize_relations(out, &mode.rule()))
}

/// Divides a `j`-homogeneous polynomial by its common `j`-monomial.
pub fn strip_j(p: &NcPoly) -> NcPoly {
    let Some(j) = p
        .terms()
        .flat_map(|(_, c)| c.terms().map(|(m, _)| m.j.clone()))
        .next()
    else {
        return p.clone();
    };
    let inv = Monomial {
        j: j.iter().map(|c| -c).collect(),
        ..Monomial::one(p.rank())
    };
    p.map_coeffs(|c| c.mul_monomial(&inv))
}

/// Multiplies by the smallest `j`-monomial that leaves no negative `j`-power.
pub fn clear_j_denominators(p: &NcPoly) -> NcPoly {
    let mut shift = vec![0i32; p.rank()];
    for (_, c) in p.terms() {
        for (m, _) in c.terms() {
            for (s, &e) in shift.iter_mut().zip(&m.j) {
                *s = (*s).max(-e);
            }
        }
    }
    let m = Monomial {
        j: shift.into_iter().collect(),
        ..Monomial::one(p.rank())
    };
    p.map_coeffs(|c| c.mul_monomial(&m))
}

fn check_square(m_rows: usize, m_cols: usize, n: usize, what: &str) -> Result<()> {
    if m_rows != n || m_cols != n {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {m_rows}×{m_cols}, expected {n}×{n}"
        )));
    }
    Ok(())
}

/// `R T₁ T₂ − T₂ T₁ R` for an `N²×N²` matrix `R` and `N×N` generator matrix.
pub fn rtt_defect(r: &RingMatrix, g: &AlgMatrix) -> Result<AlgMatrix> {
    let n = g.rows();
    check_square(g.rows(), g.cols(), n, "generator matrix")?;
    check_square(r.rows(), r.cols(), n * n, "R-matrix")?;
    let g1 = g.embed_left();
    let g2 = g.embed_right();
    let rl = r.lift();
    let lhs = rl.checked_mul(&g1)?.checked_mul(&g2)?;
    let rhs = g2.checked_mul(&g1)?.checked_mul(&rl)?;
    lhs.checked_sub(&rhs)
}

pub fn expand_rtt(r: &RingMatrix, g: &AlgMatrix, mode: &Mode) -> Result<RelationSet> {
    matrix_relations(&rtt_defect(r, g)?, "rtt", mode)
}

/// Orthogonality defect `G M Gᵗ − M`.
pub fn orthogonality_defect(g: &AlgMatrix, m: &RingMatrix) -> Result<AlgMatrix> {
    let ml = m.lift();
    g.checked_mul(&ml)?
        .checked_mul(&g.transpose())?
        .checked_sub(&ml)
}

/// Inverse-side defect `Gᵗ M⁻¹ G − M⁻¹`, given `M⁻¹`.
pub fn inverse_orthogonality_defect(g: &AlgMatrix, m_inv: &RingMatrix) -> Result<AlgMatrix> {
    orthogonality_defect(&g.transpose(), m_inv)
}

pub fn expand_orthogonality(
    g: &AlgMatrix,
    m: &RingMatrix,
    side: Side,
    mode: &Mode,
) -> Result<RelationSet> {
    let n = g.rows();
    check_square(m.rows(), m.cols(), n, "metric")?;
    let mut rels = Vec::new();
    if side != Side::Inverse {
        rels.extend(matrix_relations(&orthogonality_defect(g, m)?, "orth", mode)?.relations);
    }
    if side != Side::Primal {
        let m_inv = m.adjugate_inverse()?;
        rels.extend(
            matrix_relations(&inverse_orthogonality_defect(g, &m_inv)?, "orth-inv", mode)?
                .relations,
        );
    }
    Ok(canonicalize_relations(rels, &mode.rule()))
}

/// RTT and orthogonality relations of a bundle.
pub fn bundle_relations(b: &StructureBundle, mode: &Mode) -> Result<RelationSet> {
    let mut rels = expand_rtt(b.r_matrix(), &b.generators, mode)?.relations;
    rels.extend(expand_orthogonality(&b.generators, b.metric(), Side::Both, mode)?.relations);
    Ok(canonicalize_relations(rels, &mode.rule()))
}

/// `R₁₂ R₁₃ R₂₃ = R₂₃ R₁₃ R₁₂` in the triple tensor cube.
pub fn yang_baxter(r: &RingMatrix) -> Result<VerificationReport> {
    ybe_with(r, None)
}

/// Yang–Baxter for `R` specialized under `sig`, products reduced in the
/// specialized ring.
pub fn yang_baxter_specialized(r: &RingMatrix, sig: &JSignature) -> Result<VerificationReport> {
    ybe_with(&r.specialize(sig)?, Some(sig))
}

fn ybe_with(r: &RingMatrix, sig: Option<&JSignature>) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = (r.rows() as f64).sqrt().round() as usize;
    check_square(r.rows(), r.cols(), n * n, "R-matrix")?;
    let rank = r.rank();
    let id = RingMatrix::identity(n, rank);
    let r12 = r.kron(&id);
    let r23 = id.kron(r);
    let p23 = id.kron(&RingMatrix::flip(n, rank));
    let r13 = p23.mul(&r12).mul(&p23);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    let defect = match sig {
        Some(sig) => lhs.sub(&rhs).specialize(sig)?,
        None => lhs.sub(&rhs),
    };
    Ok(VerificationReport::from_witness(
        "ybe",
        matrix_witness(&defect, WITNESS_LIMIT),
        start,
    ))
}

/// `Jv` under a signature.
pub fn jv_specialized(rank: usize, sig: &JSignature) -> Result<CkScalar> {
    (&CkScalar::big_j_pow(rank, 1) * &CkScalar::v(rank)).specialize(sig)
}

/// Writes the specialized `R_v` as `I + Jv·R̃` with numeric `R̃`.
pub fn contraction_decompose(
    rv: &RingMatrix,
    sig: &JSignature,
) -> Result<(RingMatrix, VerificationReport)> {
    let start = Instant::now();
    if !sig.has_nilpotent() {
        return Err(Error::NoNilpotent);
    }
    let rank = rv.rank();
    let spec = rv.specialize(sig)?;
    let jv = jv_specialized(rank, sig)?;
    let (jv_mono, jv_coeff) = jv
        .leading()
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("Jv is nonzero");
    let mut tilde = RingMatrix::zeros(rv.rows(), rv.cols(), rank);
    for (i, j, x) in spec.entries() {
        let delta = if i == j {
            CkScalar::one(rank)
        } else {
            CkScalar::zero(rank)
        };
        let d = x - &delta;
        if d.is_zero() {
            continue;
        }
        let affine = d.num_terms() == 1 && d.leading().is_some_and(|(m, _)| *m == jv_mono);
        if !affine {
            return Err(Error::NotAffineInJv {
                row: i + 1,
                col: j + 1,
                residual: d.to_string(),
            });
        }
        let c = d.leading().expect("nonzero").1 * &jv_coeff.inv()?;
        tilde.set(i, j, CkScalar::constant(rank, c));
    }
    let reassembled = RingMatrix::identity(rv.rows(), rank).add(&tilde.scale(&jv));
    let report = VerificationReport::from_witness(
        "contraction",
        matrix_witness(&reassembled.sub(&spec), WITNESS_LIMIT),
        start,
    );
    Ok((tilde, report))
}

/// Counit on generator symbols: `ε(G) = I`.
fn counit_of(b: &StructureBundle) -> impl Fn(Symbol) -> Option<NcPoly> + '_ {
    let rank = b.rank();
    move |s: Symbol| {
        let delta = |row: u8, col: u8| {
            NcPoly::constant(if row == col {
                CkScalar::one(rank)
            } else {
                CkScalar::zero(rank)
            })
        };
        match b.symbol_definitions.get(&s) {
            Some(def) => Some(def.substitute(&|u: Symbol| Some(delta(u.row, u.col)))),
            None => Some(delta(s.row, s.col)),
        }
    }
}

/// `ε` annihilates every RTT and orthogonality relation.
pub fn counit_check(b: &StructureBundle) -> Result<VerificationReport> {
    let start = Instant::now();
    let eps = counit_of(b);
    let mut witness = Vec::new();
    if !b.generators.substitute(&eps).is_identity() {
        witness.push(Witness {
            location: "generators".into(),
            residual: "ε(G) ≠ I".into(),
        });
    }
    for rel in bundle_relations(b, &Mode::Formal)?.relations {
        let img = rel.poly.substitute(&eps);
        if !img.is_zero() {
            witness.push(Witness {
                location: rel.label.clone(),
                residual: img.to_string(),
            });
        }
    }
    witness.truncate(WITNESS_LIMIT);
    Ok(VerificationReport::from_witness("counit", witness, start))
}

/// Coassociativity of the matrix coproduct. Every entry of `G` is linear in
/// the generators, so in a product of `k` copies of `G` the position of a
/// letter in a word identifies its tensor factor, and `(Δ⊗id)Δ = (id⊗Δ)Δ`
/// becomes `(GG)G = G(GG)`.
pub fn coassociativity_check(g: &AlgMatrix) -> VerificationReport {
    let start = Instant::now();
    let linear = g
        .entries()
        .all(|(_, _, p)| p.terms().all(|(w, _)| w.len() == 1));
    let mut witness = Vec::new();
    if !linear {
        witness.push(Witness {
            location: "generators".into(),
            residual: "entries not linear".into(),
        });
    }
    let gg = g.mul(g);
    witness.extend(matrix_witness(&gg.mul(g).sub(&g.mul(&gg)), WITNESS_LIMIT));
    VerificationReport::from_witness("coassociativity", witness, start)
}

/// `S(G)·G − I = M·(Gᵗ M⁻¹ G − M⁻¹)` with `S(G) = M Gᵗ M⁻¹`.
pub fn antipode_check(
    g: &AlgMatrix,
    m: &RingMatrix,
    m_inv: &RingMatrix,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = g.rows();
    let ml = m.lift();
    let s = ml.checked_mul(&g.transpose())?.checked_mul(&m_inv.lift())?;
    let lhs = s
        .checked_mul(g)?
        .checked_sub(&AlgMatrix::identity(n, g.rank()))?;
    let rhs = ml.checked_mul(&inverse_orthogonality_defect(g, m_inv)?)?;
    Ok(VerificationReport::from_witness(
        "antipode",
        matrix_witness(&lhs.sub(&rhs), WITNESS_LIMIT),
        start,
    ))
}

pub fn hopf_subchecks(b: &StructureBundle) -> Result<Vec<VerificationReport>> {
    Ok(vec![
        counit_check(b)?,
        coassociativity_check(&b.generators),
        antipode_check(&b.generators, b.metric(), &b.metric_inv()?)?,
    ])
}

pub fn hopf_checks(b: &StructureBundle) -> VerificationReport {
    match hopf_subchecks(b) {
        Ok(parts) => VerificationReport::combine("hopf", &parts),
        Err(e) => VerificationReport {
            name: "hopf".into(),
            status: Status::Fail,
            witness: vec![Witness {
                location: "setup".into(),
                residual: e.to_string(),
            }],
            timing: Duration::ZERO,
        },
    }
}

/// Sets `v = 0` (hence `E = 1`) in every relation.
pub fn classical_limit(rs: &RelationSet) -> RelationSet {
    let rels = rs.relations.iter().map(|r| Relation {
        label: r.label.clone(),
        poly: r.poly.map_coeffs(|c| c.at_v_zero()),
    });
    canonicalize_relations(rels, &UnitRule::Formal)
}

/// Letters occurring in a relation set.
pub fn symbols_of(rs: &RelationSet) -> BTreeSet<Symbol> {
    rs.polys()
        .flat_map(|p| p.symbols().collect::<Vec<_>>())
        .collect()
}

/// `g h − h g` for every pair of distinct symbols.
pub fn commutativity_presentation(symbols: &BTreeSet<Symbol>, rank: usize) -> RelationSet {
    let syms: Vec<Symbol> = symbols.iter().copied().collect();
    let mut rels = Vec::new();
    for (a, &g) in syms.iter().enumerate() {
        for &h in &syms[a + 1..] {
            let gp = NcPoly::symbol(rank, g);
            let hp = NcPoly::symbol(rank, h);
            rels.push(Relation {
                label: format!("[{g},{h}]"),
                poly: gp.mul(&hp).sub(&hp.mul(&gp)),
            });
        }
    }
    canonicalize_relations(rels, &UnitRule::Formal)
}

/// `defect(B, C₀)` against `D⁻¹·defect(A, I)·(Dᵗ)⁻¹` for the classical
/// matrices of a symplectic bundle.
pub fn classical_equivalence(b: &StructureBundle) -> Result<VerificationReport> {
    let start = Instant::now();
    if b.basis != Basis::Symplectic {
        return Err(Error::DimensionMismatch(
            "classical equivalence needs the symplectic bundle".into(),
        ));
    }
    let rank = b.rank();
    let a = b.d.lift().mul(&b.classical).mul(&b.d_inv.lift());
    let lhs = orthogonality_defect(&b.classical, &b.c0)?;
    let inner = orthogonality_defect(&a, &RingMatrix::identity(b.n, rank))?;
    let rhs = b.d_inv.lift().mul(&inner).mul(&b.d_inv.transpose().lift());
    Ok(VerificationReport::from_witness(
        "classical-equivalence",
        matrix_witness(&lhs.sub(&rhs), WITNESS_LIMIT),
        start,
    ))
}

/// Rational values for `E`, `v` and the `j`'s.
#[derive(Clone, Debug)]
pub struct EvalPoint {
    pub e: Rational,
    pub v: Rational,
    pub j: Vec<Rational>,
}

impl EvalPoint {
    /// A fixed family of generic points, indexed by `seed`.
    pub fn generic(rank: usize, seed: i64) -> Self {
        const PRIMES: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
        let p = |k: i64| PRIMES[(k.rem_euclid(10)) as usize];
        EvalPoint {
            e: rat(p(seed) + 2, p(seed + 1)),
            v: rat(p(seed + 2), p(seed + 3) + 4),
            j: (0..rank as i64)
                .map(|k| rat(p(seed + 4 + k) + 1, p(seed + 5 + 2 * k)))
                .collect(),
        }
    }

    pub fn eval(&self, c: &CkScalar) -> BaseScalar {
        let mut acc = BaseScalar::zero();
        for (m, coeff) in c.terms() {
            let mut x = rat_pow(&self.e, m.e) * rat_pow(&self.v, m.v as i32);
            for (q, &k) in self.j.iter().zip(&m.j) {
                x *= rat_pow(q, k);
            }
            acc = acc + coeff.scale(&x);
        }
        acc
    }

    pub fn eval_poly(&self, p: &NcPoly) -> BTreeMap<Word, BaseScalar> {
        p.terms()
            .map(|(w, c)| (w.clone(), self.eval(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

fn rat_pow(q: &Rational, k: i32) -> Rational {
    let mut out = Rational::from_integer(1.into());
    for _ in 0..k.unsigned_abs() {
        out *= q;
    }
    if k < 0 {
        out.recip()
    } else {
        out
    }
}

/// Row-echelon span of word-indexed vectors over `Q(i, √2)`.
#[derive(Clone, Debug, Default)]
pub struct LinearSpan {
    rows: Vec<(Word, BTreeMap<Word, BaseScalar>)>,
}

impl LinearSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BTreeMap<Word, BaseScalar>) -> BTreeMap<Word, BaseScalar> {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (w, x) in row {
                    let y = v.get(w).cloned().unwrap_or_else(BaseScalar::zero) - &c * x;
                    if y.is_zero() {
                        v.remove(w);
                    } else {
                        v.insert(w.clone(), y);
                    }
                }
            }
        }
        v
    }

    /// Adds a vector; returns false if it was already in the span.
    pub fn insert(&mut self, v: &BTreeMap<Word, BaseScalar>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, c)) = r.iter().next().map(|(w, c)| (w.clone(), c.clone())) else {
            return false;
        };
        let inv = c.inv().expect("nonzero pivot");
        let row: BTreeMap<Word, BaseScalar> =
            r.iter().map(|(w, x)| (w.clone(), x * &inv)).collect();
        for (_, other) in &mut self.rows {
            if let Some(c) = other.get(&pivot).cloned() {
                for (w, x) in &row {
                    let y = other.get(w).cloned().unwrap_or_else(BaseScalar::zero) - &c * x;
                    if y.is_zero() {
                        other.remove(w);
                    } else {
                        other.insert(w.clone(), y);
                    }
                }
            }
        }
        self.rows.push((pivot, row));
        true
    }

    pub fn contains(&self, v: &BTreeMap<Word, BaseScalar>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Whether every polynomial in `targets` lies in the linear span of
/// `generators` at each of the given evaluation points. Returns the labels
/// of the targets that do not.
pub fn span_membership(
    generators: &[NcPoly],
    targets: &[(String, NcPoly)],
    points: &[EvalPoint],
) -> Vec<String> {
    let mut missing = BTreeSet::new();
    for pt in points {
        let mut span = LinearSpan::new();
        for g in generators {
            span.insert(&pt.eval_poly(g));
        }
        for (label, t) in targets {
            if !span.contains(&pt.eval_poly(t)) {
                missing.insert(label.clone());
            }
        }
    }
    missing.into_iter().collect()
}

fn named(rs: &RelationSet) -> Vec<(String, NcPoly)> {
    rs.relations
        .iter()
        .map(|r| (r.label.clone(), r.poly.clone()))
        .collect()
}

fn polys(rs: &RelationSet) -> Vec<NcPoly> {
    rs.polys().cloned().collect()
}

/// Witnesses for relations of either set missing from the span of the other.
fn span_equality_witness(
    a: &RelationSet,
    a_name: &str,
    b: &RelationSet,
    b_name: &str,
    rank: usize,
) -> Vec<Witness> {
    let points: Vec<EvalPoint> = (0..2).map(|k| EvalPoint::generic(rank, k)).collect();
    let mut witness = Vec::new();
    for label in span_membership(&polys(a), &named(b), &points) {
        witness.push(Witness {
            location: format!("{b_name} {label}"),
            residual: format!("not in span of {a_name}"),
        });
    }
    for label in span_membership(&polys(b), &named(a), &points) {
        witness.push(Witness {
            location: format!("{a_name} {label}"),
            residual: format!("not in span of {b_name}"),
        });
    }
    witness.truncate(WITNESS_LIMIT);
    witness
}

/// The metric is invertible, and at `v = 0` the orthogonality relations span
/// the classical ones for the undeformed metric.
pub fn orthogonality_check(b: &StructureBundle) -> Result<VerificationReport> {
    let start = Instant::now();
    let rank = b.rank();
    let mut witness = Vec::new();
    let m = b.metric();
    let prod = m.mul(&b.metric_inv()?);
    if !prod.is_identity() {
        witness.extend(matrix_witness(
            &prod.sub(&RingMatrix::identity(b.n, rank)),
            WITNESS_LIMIT,
        ));
    }
    let quantum = classical_limit(&expand_orthogonality(
        &b.generators,
        m,
        Side::Both,
        &Mode::Formal,
    )?);
    let classical = expand_orthogonality(
        &b.generators,
        &b.classical_metric(),
        Side::Both,
        &Mode::Formal,
    )?;
    witness.extend(span_equality_witness(
        &quantum,
        "orth|v=0",
        &classical,
        "classical-orth",
        rank,
    ));
    Ok(VerificationReport::from_witness(
        "orthogonality",
        witness,
        start,
    ))
}

/// At `v = 0` the RTT relations span pairwise commutativity of the
/// generators; for the symplectic bundle also [`classical_equivalence`].
pub fn classical_limit_check(b: &StructureBundle) -> Result<VerificationReport> {
    let start = Instant::now();
    let rank = b.rank();
    let rtt = expand_rtt(b.r_matrix(), &b.generators, &Mode::Formal)?;
    let limit = classical_limit(&rtt);
    let comm = commutativity_presentation(&symbols_of(&rtt), rank);
    let mut parts = vec![VerificationReport::from_witness(
        "rtt|v=0",
        span_equality_witness(&limit, "rtt|v=0", &comm, "commutativity", rank),
        start,
    )];
    if b.basis == Basis::Symplectic {
        parts.push(classical_equivalence(b)?);
    }
    Ok(VerificationReport::combine("classical-limit", &parts))
}

/// Every relation specialized under `sig`.
pub fn specialize_relations(rs: &RelationSet, sig: &JSignature) -> Result<RelationSet> {
    let rels = rs
        .relations
        .iter()
        .map(|r| {
            Ok(Relation {
                label: r.label.clone(),
                poly: r.poly.try_map_coeffs(|c| c.specialize(sig))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(canonicalize_relations(
        rels,
        &UnitRule::Specialized(sig.clone()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::JValue;
    use crate::structures::r_q;

    fn sig(s: &str) -> JSignature {
        JSignature::parse(s).unwrap()
    }

    #[test]
    fn ybe_small() {
        let r = r_q(3).unwrap();
        assert!(yang_baxter(&r).unwrap().passed());
        assert!(yang_baxter(&RingMatrix::identity(9, 2)).unwrap().passed());
        let mut bad = r.clone();
        bad.set(1, 3, CkScalar::from_int(2, 5));
        let rep = yang_baxter(&bad).unwrap();
        assert!(!rep.passed());
        assert!(!rep.witness.is_empty());
    }

    #[test]
    fn rtt_counit_and_limits() {
        let b = StructureBundle::new(3, Basis::Symplectic).unwrap();
        let id = AlgMatrix::identity(3, 2);
        assert!(expand_rtt(b.r_matrix(), &id, &Mode::Formal)
            .unwrap()
            .is_empty());
        assert!(
            expand_orthogonality(&id, &b.c_prime, Side::Both, &Mode::Formal)
                .unwrap()
                .is_empty()
        );
        let rtt = expand_rtt(b.r_matrix(), &b.generators, &Mode::Formal).unwrap();
        assert!(!rtt.is_empty());
        let cl = classical_limit(&rtt);
        let comm = commutativity_presentation(&symbols_of(&rtt), 2);
        let pts = [EvalPoint::generic(2, 0)];
        assert!(span_membership(
            &cl.polys().cloned().collect::<Vec<_>>(),
            &named(&comm),
            &pts
        )
        .is_empty());
        assert!(span_membership(
            &comm.polys().cloned().collect::<Vec<_>>(),
            &named(&cl),
            &pts
        )
        .is_empty());
        assert!(classical_limit(&RelationSet::default()).is_empty());
    }

    #[test]
    fn orthogonality_and_classical_limit_n3() {
        for basis in [Basis::Symplectic, Basis::Cartesian] {
            let b = StructureBundle::new(3, basis).unwrap();
            let rep = orthogonality_check(&b).unwrap();
            assert!(rep.passed(), "{rep}");
            let rep = classical_limit_check(&b).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn contraction_n3() {
        let b = StructureBundle::new(3, Basis::Symplectic).unwrap();
        let (t, rep) = contraction_decompose(&b.r_v, &sig("iota,1")).unwrap();
        assert!(rep.passed());
        assert_eq!(t.get(3, 1).as_constant(), Some(BaseScalar::from_int(2)));
        let (t2, _) = contraction_decompose(&b.r_v, &sig("iota,iota")).unwrap();
        assert_eq!(t, t2);
        assert_eq!(
            contraction_decompose(&b.r_v, &sig("1,1")).unwrap_err(),
            Error::NoNilpotent
        );
    }

    #[test]
    fn hopf_n3() {
        for basis in [Basis::Symplectic, Basis::Cartesian] {
            let b = StructureBundle::new(3, basis).unwrap();
            let rep = hopf_checks(&b);
            assert!(rep.passed(), "{rep}");
        }
        let b = StructureBundle::new(3, Basis::Cartesian).unwrap();
        let mut bad = b.c_prime.clone();
        bad.set(0, 0, CkScalar::zero(2));
        let rep = antipode_check(&b.generators, &bad, &b.c_prime_inv).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn classical_equivalence_n3() {
        let b = StructureBundle::new(3, Basis::Symplectic).unwrap();
        assert!(classical_equivalence(&b).unwrap().passed());
    }

    #[test]
    fn specialization_safe_n3() {
        for basis in [Basis::Symplectic, Basis::Cartesian] {
            let b = StructureBundle::new(3, basis).unwrap();
            let rs = bundle_relations(&b, &Mode::Formal).unwrap();
            for s in JSignature::enumerate(2, &[JValue::One, JValue::Nilpotent]) {
                specialize_relations(&rs, &s).unwrap();
                bundle_relations(&b, &Mode::Specialized(s)).unwrap();
            }
        }
    }

    #[test]
    fn linear_span_basics() {
        let r = 2;
        let a = NcPoly::symbol(r, Symbol::parse("t11").unwrap());
        let c = NcPoly::symbol(r, Symbol::parse("t12").unwrap());
        let pt = EvalPoint::generic(r, 1);
        let mut span = LinearSpan::new();
        assert!(span.insert(&pt.eval_poly(&a.add(&c))));
        assert!(!span.contains(&pt.eval_poly(&a)));
        assert!(span.insert(&pt.eval_poly(&a.sub(&c))));
        assert!(span.contains(&pt.eval_poly(&a)));
        assert!(!span.insert(&pt.eval_poly(&c)));
        assert_eq!(span.dim(), 2);
    }
}
