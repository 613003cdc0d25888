//! Duality between the quantum group and the quantum algebra: the pairing
//! `⟨L^{(±)}(j), T(j)⟩ = R^{(±)}(j)`, evaluation of functionals on words, and
//! the commutation relations of the `L`-functionals.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::freealg::{
    canonicalize_relations, AlgMatrix, Family, NcPoly, Relation, RelationSet, RingMatrix, Symbol,
    UnitRule, Word,
};
use crate::relations::{clear_j_denominators, matrix_relations, orthogonality_defect, Mode};
use crate::scalar::{BaseScalar, CkScalar, JSignature, JValue, Monomial};
use crate::structures::{components, Basis, StructureBundle};

pub const DEFAULT_WORD_BOUND: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// A functional on the quantum group: an entry of `L^{(±)}(j)` (zero-based)
/// or a single component symbol.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Functional {
    Entry { sign: Sign, row: usize, col: usize },
    Symbol(Symbol),
}

/// Summand `coeff · jmono · symbol` of an entry.
#[derive(Clone, Debug)]
struct Term {
    symbol: Symbol,
    coeff: BaseScalar,
}

#[derive(Clone, Debug)]
struct EntryTerms {
    sign: Sign,
    row: usize,
    col: usize,
    terms: Vec<Term>,
}

#[derive(Clone, Debug)]
pub struct PairingTable {
    pub n: usize,
    pub sig: Option<JSignature>,
    rank: usize,
    formal: BTreeMap<(Symbol, Symbol), CkScalar>,
    values: BTreeMap<(Symbol, Symbol), CkScalar>,
    l_plus: AlgMatrix,
    l_minus: AlgMatrix,
    r_plus: RingMatrix,
    r_minus: RingMatrix,
    functionals: Vec<Symbol>,
    generators: Vec<Symbol>,
    /// Each functional symbol as a combination of `L`-entries (left inverse of the block).
    symbol_entries: BTreeMap<Symbol, Vec<(Sign, usize, usize, CkScalar)>>,
}

/// Connected components of symbols that share an entry.
fn blocks<'a>(entries: &'a [EntryTerms]) -> Vec<(Vec<Symbol>, Vec<&'a EntryTerms>)> {
    let mut parent: BTreeMap<Symbol, Symbol> = BTreeMap::new();
    fn find(p: &mut BTreeMap<Symbol, Symbol>, s: Symbol) -> Symbol {
        let up = *p.entry(s).or_insert(s);
        if up == s {
            s
        } else {
            let root = find(p, up);
            p.insert(s, root);
            root
        }
    }
    for e in entries {
        let first = e.terms[0].symbol;
        for t in &e.terms {
            let (a, b) = (find(&mut parent, first), find(&mut parent, t.symbol));
            if a != b {
                parent.insert(a, b);
            }
        }
    }
    let mut groups: BTreeMap<Symbol, (Vec<Symbol>, Vec<&EntryTerms>)> = BTreeMap::new();
    let syms: Vec<Symbol> = parent.keys().copied().collect();
    for s in syms {
        let root = find(&mut parent, s);
        groups.entry(root).or_default().0.push(s);
    }
    for e in entries {
        let root = find(&mut parent, e.terms[0].symbol);
        groups.get_mut(&root).expect("registered").1.push(e);
    }
    groups.into_values().collect()
}

/// Solves `A y = b` over `Q(i, √2)` with right-hand sides in the scalar ring.
fn solve(
    mut rows: Vec<(Vec<BaseScalar>, CkScalar)>,
    unknowns: usize,
    what: &str,
) -> Result<Vec<CkScalar>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[col].inv()?;
        rows[r].0.iter_mut().for_each(|x| *x = &*x * &inv);
        rows[r].1 = rows[r].1.scale(&inv);
        for i in 0..rows.len() {
            if i == r || rows[i].0[col].is_zero() {
                continue;
            }
            let f = rows[i].0[col].clone();
            let (pr, pb) = (rows[r].0.clone(), rows[r].1.clone());
            for (x, y) in rows[i].0.iter_mut().zip(&pr) {
                *x = &*x - &(&f * y);
            }
            rows[i].1 = &rows[i].1 - &pb.scale(&f);
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|(_, b)| !b.is_zero()) {
        return Err(Error::InconsistentPairing(what.to_string()));
    }
    if pivots.len() < unknowns {
        return Err(Error::UnderdeterminedPairing(what.to_string()));
    }
    Ok(rows.into_iter().take(unknowns).map(|(_, b)| b).collect())
}

fn entry_terms(
    m: &AlgMatrix,
    sign: Sign,
    jmono: &mut BTreeMap<Symbol, Monomial>,
) -> Result<Vec<EntryTerms>> {
    let mut out = Vec::new();
    for (row, col, p) in m.entries() {
        if p.is_zero() {
            continue;
        }
        let mut terms = Vec::new();
        for c in components(p) {
            if let Some(prev) = jmono.insert(c.symbol, c.jmono.clone()) {
                if prev != c.jmono {
                    return Err(Error::InconsistentPairing(format!(
                        "{} carries two j-prefactors",
                        c.symbol
                    )));
                }
            }
            terms.push(Term {
                symbol: c.symbol,
                coeff: c.coeff,
            });
        }
        out.push(EntryTerms {
            sign,
            row,
            col,
            terms,
        });
    }
    Ok(out)
}

fn coeff_of(e: &EntryTerms, s: Symbol) -> BaseScalar {
    e.terms
        .iter()
        .find(|t| t.symbol == s)
        .map(|t| t.coeff.clone())
        .unwrap_or_else(BaseScalar::zero)
}

/// Builds the pairing for dimension `n`, formal in `j` or specialized under `sig`.
pub fn build_pairing_table(n: usize, sig: Option<&JSignature>) -> Result<PairingTable> {
    let b = StructureBundle::new(n, Basis::Symplectic)?;
    let rank = b.rank();
    let l_plus = b.l_plus.clone().expect("symplectic");
    let l_minus = b.l_minus.clone().expect("symplectic");
    let r_of = |s: Sign| match s {
        Sign::Plus => &b.r_plus,
        Sign::Minus => &b.r_minus,
    };

    let mut fmono = BTreeMap::new();
    let mut fentries = entry_terms(&l_plus, Sign::Plus, &mut fmono)?;
    fentries.extend(entry_terms(&l_minus, Sign::Minus, &mut fmono)?);
    let mut gmono = BTreeMap::new();
    let gentries = entry_terms(&b.generators, Sign::Plus, &mut gmono)?;

    // vanishing L- or T-entries force vanishing R-entries
    for (sign, lm) in [(Sign::Plus, &l_plus), (Sign::Minus, &l_minus)] {
        for (i, j, lp) in lm.entries() {
            for (k, l, tp) in b.generators.entries() {
                let r = r_of(sign).get(i * n + k, j * n + l);
                if (lp.is_zero() || tp.is_zero()) && !r.is_zero() {
                    return Err(Error::InconsistentPairing(format!(
                        "zero entry pairs to {r} at ({},{}),({},{})",
                        i + 1,
                        j + 1,
                        k + 1,
                        l + 1
                    )));
                }
            }
        }
    }

    let fblocks = blocks(&fentries);
    let gblocks = blocks(&gentries);
    let mut formal = BTreeMap::new();
    for (fsyms, fes) in &fblocks {
        for (gsyms, ges) in &gblocks {
            let unknowns: Vec<(Symbol, Symbol)> = fsyms
                .iter()
                .flat_map(|&f| gsyms.iter().map(move |&g| (f, g)))
                .collect();
            let mut rows = Vec::new();
            for fe in fes {
                for ge in ges {
                    let coeffs = unknowns
                        .iter()
                        .map(|&(f, g)| &coeff_of(fe, f) * &coeff_of(ge, g))
                        .collect();
                    let rhs = r_of(fe.sign)
                        .get(fe.row * n + ge.row, fe.col * n + ge.col)
                        .clone();
                    rows.push((coeffs, rhs));
                }
            }
            let what = format!("block {:?} × {:?}", fsyms, gsyms);
            let ys = solve(rows, unknowns.len(), &what)?;
            for ((f, g), y) in unknowns.into_iter().zip(ys) {
                if y.is_zero() {
                    continue;
                }
                // x = y / (jmono_f · jmono_g)
                let m = Monomial {
                    j: fmono[&f]
                        .j
                        .iter()
                        .zip(&gmono[&g].j)
                        .map(|(a, b)| -(a + b))
                        .collect(),
                    ..Monomial::one(rank)
                };
                formal.insert((f, g), y.mul_monomial(&m));
            }
        }
    }

    // left inverse of each functional block
    let mut symbol_entries = BTreeMap::new();
    for (fsyms, fes) in &fblocks {
        for (idx, &f) in fsyms.iter().enumerate() {
            // Φᵀ w = e_f, with Φ[e][s] = coeff of s in entry e
            let rows: Vec<(Vec<BaseScalar>, CkScalar)> = fsyms
                .iter()
                .enumerate()
                .map(|(k, &s)| {
                    let target = if k == idx {
                        CkScalar::one(rank)
                    } else {
                        CkScalar::zero(rank)
                    };
                    (fes.iter().map(|e| coeff_of(e, s)).collect(), target)
                })
                .collect();
            let w = solve_any(rows, fes.len())?;
            let inv_m = Monomial {
                j: fmono[&f].j.iter().map(|c| -c).collect(),
                ..Monomial::one(rank)
            };
            let combo = fes
                .iter()
                .zip(w)
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e.sign, e.row, e.col, c.mul_monomial(&inv_m)))
                .collect();
            symbol_entries.insert(f, combo);
        }
    }

    let values = match sig {
        None => formal.clone(),
        Some(s) => formal
            .iter()
            .map(|(k, v)| Ok((*k, v.specialize(s)?)))
            .filter(|r: &Result<(_, CkScalar)>| r.as_ref().map_or(true, |(_, v)| !v.is_zero()))
            .collect::<Result<_>>()?,
    };
    Ok(PairingTable {
        n,
        sig: sig.cloned(),
        rank,
        formal,
        values,
        l_plus,
        l_minus,
        r_plus: b.r_plus.clone(),
        r_minus: b.r_minus.clone(),
        functionals: fmono.keys().copied().collect(),
        generators: gmono.keys().copied().collect(),
        symbol_entries,
    })
}

/// Some solution of an underdetermined but consistent system (free variables zero).
fn solve_any(mut rows: Vec<(Vec<BaseScalar>, CkScalar)>, unknowns: usize) -> Result<Vec<CkScalar>> {
    let rank = rows.first().map_or(1, |r| r.1.rank());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[col].inv()?;
        rows[r].0.iter_mut().for_each(|x| *x = &*x * &inv);
        rows[r].1 = rows[r].1.scale(&inv);
        for i in 0..rows.len() {
            if i != r && !rows[i].0[col].is_zero() {
                let f = rows[i].0[col].clone();
                let (pr, pb) = (rows[r].0.clone(), rows[r].1.clone());
                for (x, y) in rows[i].0.iter_mut().zip(&pr) {
                    *x = &*x - &(&f * y);
                }
                rows[i].1 = &rows[i].1 - &pb.scale(&f);
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|(_, b)| !b.is_zero()) {
        return Err(Error::InconsistentPairing(
            "functional is not a combination of L-entries".into(),
        ));
    }
    let mut out = vec![CkScalar::zero(rank); unknowns];
    for (k, &col) in pivots.iter().enumerate() {
        out[col] = rows[k].1.clone();
    }
    Ok(out)
}

impl PairingTable {
    /// `⟨f, g⟩`, specialized when the table is.
    pub fn get(&self, f: Symbol, g: Symbol) -> CkScalar {
        self.values
            .get(&(f, g))
            .cloned()
            .unwrap_or_else(|| CkScalar::zero(self.rank))
    }

    pub fn formal(&self, f: Symbol, g: Symbol) -> CkScalar {
        self.formal
            .get(&(f, g))
            .cloned()
            .unwrap_or_else(|| CkScalar::zero(self.rank))
    }

    /// Nonzero values.
    pub fn entries(&self) -> impl Iterator<Item = (Symbol, Symbol, &CkScalar)> {
        self.values.iter().map(|((f, g), v)| (*f, *g, v))
    }

    pub fn functionals(&self) -> &[Symbol] {
        &self.functionals
    }

    pub fn generators(&self) -> &[Symbol] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Table in which each diagonal functional `l^{(+)}_kk` is written as
    /// `l_kk + i·l̃_kk`, with `l_kk` supported on `t`-generators and `l̃_kk` on
    /// `t̃`-generators. Off-diagonal functionals are unchanged; `l^{(−)}_kk`
    /// are left out.
    pub fn diagonal_split(&self) -> BTreeMap<(Symbol, Symbol), CkScalar> {
        let minus_i = -BaseScalar::i();
        let mut out = BTreeMap::new();
        for (f, g, v) in self.entries() {
            let key = match f.family {
                Family::LDiagMinus => continue,
                Family::LDiagPlus if g.family == Family::TTilde => {
                    out.insert(
                        (
                            Symbol {
                                family: Family::LTilde,
                                ..f
                            },
                            g,
                        ),
                        v.scale(&minus_i),
                    );
                    continue;
                }
                Family::LDiagPlus => Symbol {
                    family: Family::L,
                    ..f
                },
                _ => f,
            };
            out.insert((key, g), v.clone());
        }
        out
    }

    /// Matrix `⟨L^{(σ)}_{ik}, a⟩` for one generator symbol, formal.
    fn letter_matrix(&self, sign: Sign, a: Symbol) -> RingMatrix {
        let lm = match sign {
            Sign::Plus => &self.l_plus,
            Sign::Minus => &self.l_minus,
        };
        RingMatrix::from_fn(self.n, self.n, self.rank, |i, k| {
            let mut acc = CkScalar::zero(self.rank);
            for (w, c) in lm.get(i, k).terms() {
                if let Some(x) = self.formal.get(&(w[0], a)) {
                    acc = &acc + &(c * x);
                }
            }
            acc
        })
    }

    fn entry_on_word(&self, sign: Sign, row: usize, col: usize, w: &Word) -> CkScalar {
        let mut m = RingMatrix::identity(self.n, self.rank);
        for &a in w {
            m = m.mul(&self.letter_matrix(sign, a));
        }
        m.get(row, col).clone()
    }

    /// `⟨f, a₁⋯a_k⟩` by the matrix-product rule, with the default word bound.
    pub fn eval(&self, f: &Functional, w: &Word) -> Result<CkScalar> {
        self.eval_bounded(f, w, DEFAULT_WORD_BOUND)
    }

    pub fn eval_bounded(&self, f: &Functional, w: &Word, bound: usize) -> Result<CkScalar> {
        if w.len() > bound {
            return Err(Error::WordTooLong(w.len(), bound));
        }
        if let Some(bad) = w
            .iter()
            .find(|s| !matches!(s.family, Family::T | Family::TTilde))
        {
            return Err(Error::Parse(format!(
                "{bad} is not a generator of the quantum group"
            )));
        }
        let formal = match f {
            Functional::Entry { sign, row, col } => {
                if *row >= self.n || *col >= self.n {
                    return Err(Error::DimensionMismatch(format!(
                        "entry ({row},{col}) outside {0}×{0}",
                        self.n
                    )));
                }
                self.entry_on_word(*sign, *row, *col, w)
            }
            Functional::Symbol(s) => {
                let combo = self
                    .symbol_entries
                    .get(s)
                    .ok_or_else(|| Error::Parse(format!("unknown functional {s}")))?;
                combo
                    .iter()
                    .fold(CkScalar::zero(self.rank), |acc, (sign, i, j, c)| {
                        &acc + &(c * &self.entry_on_word(*sign, *i, *j, w))
                    })
            }
        };
        match &self.sig {
            Some(s) => formal.specialize(s),
            None => Ok(formal),
        }
    }
}

impl PairingTable {
    /// Formal value of a product of functional symbols on `T_{a₁b₁}⋯T_{a_pb_p}`
    /// (zero-based entries), through the matrix coproduct of `T`. The empty
    /// product is the counit.
    pub fn monomial_on_entries(
        &self,
        fs: &[Symbol],
        entries: &[(usize, usize)],
    ) -> Result<CkScalar> {
        let r = self.rank;
        match fs {
            [] => Ok(if entries.iter().all(|(a, b)| a == b) {
                CkScalar::one(r)
            } else {
                CkScalar::zero(r)
            }),
            [f] => {
                let combo = self
                    .symbol_entries
                    .get(f)
                    .ok_or_else(|| Error::Parse(format!("unknown functional {f}")))?;
                Ok(combo
                    .iter()
                    .fold(CkScalar::zero(r), |acc, (sign, i, j, c)| {
                        &acc + &(c * &self.entry_on_entries(*sign, *i, *j, entries))
                    }))
            }
            [f, rest @ ..] => {
                let p = entries.len();
                let mut acc = CkScalar::zero(r);
                for mut idx in 0..self.n.pow(p as u32) {
                    let mut mid = Vec::with_capacity(p);
                    for _ in 0..p {
                        mid.push(idx % self.n);
                        idx /= self.n;
                    }
                    let left: Vec<_> = entries
                        .iter()
                        .zip(&mid)
                        .map(|(&(a, _), &k)| (a, k))
                        .collect();
                    let x = self.monomial_on_entries(std::slice::from_ref(f), &left)?;
                    if x.is_zero() {
                        continue;
                    }
                    let right: Vec<_> = entries
                        .iter()
                        .zip(&mid)
                        .map(|(&(_, b), &k)| (k, b))
                        .collect();
                    acc = &acc + &(&x * &self.monomial_on_entries(rest, &right)?);
                }
                Ok(acc)
            }
        }
    }

    /// `⟨L^{(σ)}_{ij}, T_{a₁b₁}⋯T_{a_pb_p}⟩` straight from `R^{(σ)}`.
    pub fn entry_on_entries(
        &self,
        sign: Sign,
        i: usize,
        j: usize,
        entries: &[(usize, usize)],
    ) -> CkScalar {
        let n = self.n;
        let r = match sign {
            Sign::Plus => &self.r_plus,
            Sign::Minus => &self.r_minus,
        };
        let mut v: Vec<CkScalar> = (0..n)
            .map(|k| {
                if k == i {
                    CkScalar::one(self.rank)
                } else {
                    CkScalar::zero(self.rank)
                }
            })
            .collect();
        for &(a, b) in entries {
            v = (0..n)
                .map(|k2| {
                    (0..n).fold(CkScalar::zero(self.rank), |acc, k| {
                        let x = r.get(k * n + a, k2 * n + b);
                        if v[k].is_zero() || x.is_zero() {
                            acc
                        } else {
                            &acc + &(&v[k] * x)
                        }
                    })
                })
                .collect();
        }
        v[j].clone()
    }

    /// Formal value of a polynomial in functional symbols on a product of `T`-entries.
    pub fn poly_on_entries(&self, p: &NcPoly, entries: &[(usize, usize)]) -> Result<CkScalar> {
        let mut acc = CkScalar::zero(self.rank);
        for (w, c) in p.terms() {
            acc = &acc + &(c * &self.monomial_on_entries(w, entries)?);
        }
        Ok(acc)
    }
}

pub fn eval_functional(f: &Functional, w: &Word, table: &PairingTable) -> Result<CkScalar> {
    table.eval(f, w)
}

/// `R A₁ B₂ − B₂ A₁ R`.
pub fn mixed_rtt_defect(r: &RingMatrix, a: &AlgMatrix, b: &AlgMatrix) -> Result<AlgMatrix> {
    let rl = r.lift();
    let a1 = a.embed_left();
    let b2 = b.embed_right();
    rl.checked_mul(&a1)?
        .checked_mul(&b2)?
        .checked_sub(&b2.checked_mul(&a1)?.checked_mul(&rl)?)
}

/// Relations among the `L`-functionals: the three `R^{(+)}LL` identities,
/// `L Cᵗ Lᵗ = Cᵗ`, `Lᵗ (Cᵗ)⁻¹ L = (Cᵗ)⁻¹` for both `L^{(±)}`, and the diagonal
/// constraints. Under [`Mode::Specialized`] each relation is first multiplied
/// by a `j`-monomial clearing the negative powers carried by the `L`-entries.
pub fn derive_dual_relations(n: usize, mode: &Mode) -> Result<RelationSet> {
    let b = StructureBundle::new(n, Basis::Symplectic)?;
    let rank = b.rank();
    let lp = b.l_plus.clone().expect("symplectic");
    let lm = b.l_minus.clone().expect("symplectic");
    let ct = b.c.transpose();
    let ct_inv = b.c.adjugate_inverse()?.transpose();
    let formal_mode = match mode {
        Mode::Specialized(_) => Mode::Formal,
        m => m.clone(),
    };
    let mut rels = Vec::new();
    let mut push = |m: AlgMatrix, label: &str| -> Result<()> {
        rels.extend(matrix_relations(&m, label, &formal_mode)?.relations);
        Ok(())
    };
    push(mixed_rtt_defect(&b.r_plus, &lp, &lp)?, "rll++")?;
    push(mixed_rtt_defect(&b.r_plus, &lm, &lm)?, "rll--")?;
    push(mixed_rtt_defect(&b.r_plus, &lp, &lm)?, "rll+-")?;
    for (name, l) in [("+", &lp), ("-", &lm)] {
        push(orthogonality_defect(l, &ct)?, &format!("orth{name}"))?;
        push(
            orthogonality_defect(&l.transpose(), &ct_inv)?,
            &format!("orth-inv{name}"),
        )?;
    }
    let sym = |f: Family, k: usize| NcPoly::symbol(rank, Symbol::new(f, k, k));
    let one = NcPoly::one(rank);
    let mut product = one.clone();
    for k in 1..=n {
        let (p, m) = (sym(Family::LDiagPlus, k), sym(Family::LDiagMinus, k));
        rels.push(Relation {
            label: format!("diag{k}"),
            poly: p.mul(&m).sub(&one),
        });
        rels.push(Relation {
            label: format!("diag{k}'"),
            poly: m.mul(&p).sub(&one),
        });
        product = product.mul(&p);
    }
    rels.push(Relation {
        label: "det".into(),
        poly: product.sub(&one),
    });
    let set = canonicalize_relations(rels, &UnitRule::Formal);
    match mode {
        Mode::Specialized(sig) => {
            let cleared = set
                .relations
                .into_iter()
                .map(|r| Relation {
                    poly: clear_j_denominators(&r.poly),
                    label: r.label,
                })
                .collect::<Vec<_>>();
            crate::relations::specialize_relations(
                &canonicalize_relations(cleared, &UnitRule::Formal),
                sig,
            )
        }
        _ => Ok(set),
    }
}

/// Hopf structure of the quantum algebra with primitive `X_{02}` and its
/// relation to the `L`-functionals, as display text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CkAlgebraPresentation {
    pub generators: Vec<String>,
    pub coproduct: Vec<String>,
    pub counit: Vec<String>,
    pub antipode: Vec<String>,
    pub commutators: Vec<String>,
    pub isomorphism: Vec<String>,
    pub notes: Vec<String>,
}

const SUBSCRIPTS: [&str; 10] = ["₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"];

/// Text of `j_k^p` under a parameter value; empty when it is one.
fn j_text(k: usize, v: JValue, p: i32) -> String {
    let base = match v {
        JValue::One => return String::new(),
        JValue::Nilpotent => format!("ι{}", SUBSCRIPTS[k]),
        JValue::Imaginary => "i".to_string(),
    };
    match p {
        1 => base,
        2 => format!("{base}²"),
        -1 => format!("{base}⁻¹"),
        _ => format!("{base}^{p}"),
    }
}

pub fn present_ck_algebra(n: usize, sig: &JSignature) -> Result<CkAlgebraPresentation> {
    if n != 3 {
        return Err(Error::BadDimension(n));
    }
    if sig.rank() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "signature of length {} for N = 3",
            sig.rank()
        )));
    }
    let v = sig.values();
    let j1 = |p| j_text(1, v[0], p);
    let j2 = |p| j_text(2, v[1], p);
    let big_j = |p| format!("{}{}", j1(p), j2(p));
    let fill = |s: &str| {
        s.replace("{j1^2}", &j1(2))
            .replace("{j2^2}", &j2(2))
            .replace("{j1^-1}", &j1(-1))
            .replace("{j2^-1}", &j2(-1))
            .replace("{j1}", &j1(1))
            .replace("{j2}", &j2(1))
            .replace("{J^-1}", &big_j(-1))
            .replace("{J}", &big_j(1))
    };
    let lines = |ts: &[&str]| ts.iter().map(|t| fill(t)).collect::<Vec<_>>();
    let mut notes = Vec::new();
    for (k, val) in v.iter().enumerate() {
        if *val == JValue::Nilpotent {
            notes.push(format!("ι{}² = 0", SUBSCRIPTS[k + 1]));
        }
    }
    Ok(CkAlgebraPresentation {
        generators: vec!["X_{01}".into(), "X_{02}".into(), "X_{12}".into()],
        coproduct: lines(&[
            "ΔX_{02}=I⊗X_{02}+X_{02}⊗I",
            "ΔX=e^{-vX_{02}/2}⊗X+X⊗e^{vX_{02}/2}, X=X_{01},X_{12}",
        ]),
        counit: lines(&["ε(X_{01})=ε(X_{02})=ε(X_{12})=0"]),
        antipode: lines(&[
            "S(X_{02})=-X_{02}",
            "S(X_{01})=-X_{01}cos({J}v/2)+{j1^2}X_{12}{J^-1}sin({J}v/2)",
            "S(X_{12})=-X_{12}cos({J}v/2)-{j2^2}X_{01}{J^-1}sin({J}v/2)",
        ]),
        commutators: lines(&[
            "[X_{01},X_{02}]={j1^2}X_{12}",
            "[X_{02},X_{12}]={j2^2}X_{01}",
            "[X_{12},X_{01}]=sinh(vX_{02})/v",
        ]),
        isomorphism: lines(&[
            "l_{11}=e^{vX_{02}}",
            "{j1^-1}l_{12}={j2}EX_{01}e^{vX_{02}/2}",
            "{j2^-1}l̃_{12}=-{j1}EX_{12}e^{vX_{12}/2}",
            "E=i(v{J^-1}sin({J}v))^{1/2}e^{-{J}v}",
        ]),
        notes,
    })
}

/// Symbols occurring in a set of relations, by family.
pub fn functional_symbols(rs: &RelationSet) -> BTreeSet<Symbol> {
    rs.polys()
        .flat_map(|p| p.symbols().collect::<Vec<_>>())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::HyperKind;

    fn s(x: &str) -> Symbol {
        Symbol::parse(x).unwrap()
    }

    #[test]
    fn first_values_n3() {
        let t = build_pairing_table(3, None).unwrap();
        let r = 2;
        assert!(t.get(s("l+11"), s("t22")).is_one());
        assert_eq!(
            t.get(s("l+11"), s("t11")),
            CkScalar::hyper(HyperKind::Cosh, 2, r)
        );
        assert!(t.get(s("l+11"), s("t13")).is_zero());
    }

    #[test]
    fn words() {
        let t = build_pairing_table(3, None).unwrap();
        let f = Functional::Symbol(s("l+11"));
        let w = |xs: &[&str]| xs.iter().map(|x| s(x)).collect::<Word>();
        assert!(t.eval(&f, &w(&[])).unwrap().is_one());
        assert!(t.eval(&f, &w(&["t22", "t22"])).unwrap().is_one());
        assert_eq!(
            t.eval(&f, &w(&["t11", "t22"])).unwrap(),
            CkScalar::hyper(HyperKind::Cosh, 2, 2)
        );
        assert_eq!(t.eval(&f, &w(&["t11"; 5])), Err(Error::WordTooLong(5, 4)));
        let g = Functional::Symbol(s("l12"));
        assert_eq!(
            t.eval(&g, &w(&["t12"])).unwrap(),
            t.formal(s("l12"), s("t12"))
        );
    }

    #[test]
    fn presentation_text() {
        let p = present_ck_algebra(3, &JSignature::parse("1,1").unwrap()).unwrap();
        assert_eq!(p.commutators[0], "[X_{01},X_{02}]=X_{12}");
        let p = present_ck_algebra(3, &JSignature::parse("iota,1").unwrap()).unwrap();
        assert_eq!(p.commutators[0], "[X_{01},X_{02}]=ι₁²X_{12}");
        assert_eq!(p.notes, vec!["ι₁² = 0".to_string()]);
        assert_eq!(p.commutators[2], "[X_{12},X_{01}]=sinh(vX_{02})/v");
        assert!(present_ck_algebra(4, &JSignature::parse("1,1,1").unwrap()).is_err());
    }
}
