//! Browser bindings: the contraction matrix, the pairing table and the
//! verification checks, each rendered as text.

use qck_core::pairing::build_pairing_table;
use qck_core::relations::{
    classical_limit_check, contraction_decompose, hopf_checks, orthogonality_check, yang_baxter,
    yang_baxter_specialized, VerificationReport,
};
use qck_core::{Basis, JSignature, StructureBundle};
use wasm_bindgen::prelude::*;

fn signature(n: usize, j: &str) -> Result<Option<JSignature>, String> {
    if !(3..=6).contains(&n) {
        return Err(format!("N must be between 3 and 6, got {n}"));
    }
    if j.trim().is_empty() {
        return Ok(None);
    }
    let sig = JSignature::parse(j.trim()).map_err(|e| e.to_string())?;
    if sig.rank() != n - 1 {
        return Err(format!("need {} j values for N = {n}", n - 1));
    }
    Ok(Some(sig))
}

fn basis(name: &str) -> Result<Basis, String> {
    match name {
        "symplectic" => Ok(Basis::Symplectic),
        "cartesian" => Ok(Basis::Cartesian),
        _ => Err(format!("unknown basis {name:?}")),
    }
}

/// `R̃` with `R_v = I + Jv·R̃` for N = 3, as a grid.
#[wasm_bindgen]
pub fn contraction(j: &str) -> Result<String, String> {
    let sig = signature(3, j)?.ok_or("give j values, at least one iota")?;
    let b = StructureBundle::new(3, Basis::Symplectic).map_err(|e| e.to_string())?;
    let (tilde, rep) = contraction_decompose(&b.r_v, &sig).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for i in 0..tilde.rows() {
        let row: Vec<String> = (0..tilde.cols()).map(|k| format!("{:>3}", tilde.get(i, k).to_string())).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str(&format!("{}: {}\n", rep.name, rep.status.name()));
    Ok(out)
}

/// Nonzero pairing values, one `f(g) = value` per line.
#[wasm_bindgen]
pub fn pairing_table(n: usize, j: &str) -> Result<String, String> {
    let sig = signature(n, j)?;
    let table = build_pairing_table(n, sig.as_ref()).map_err(|e| e.to_string())?;
    Ok(table
        .diagonal_split()
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((f, g), v)| format!("{f}({g}) = {v}\n"))
        .collect())
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = format!("{}: {}\n", r.name, r.status.name());
    for w in &r.witness {
        out.push_str(&format!("  at {}: {}\n", w.location, w.residual));
    }
    out
}

/// Runs one check (`ybe`, `orthogonality`, `hopf`, `classical-limit`).
#[wasm_bindgen]
pub fn run_check(n: usize, basis_name: &str, j: &str, which: &str) -> Result<String, String> {
    let sig = signature(n, j)?;
    let b = StructureBundle::new(n, basis(basis_name)?).map_err(|e| e.to_string())?;
    let rep = match which {
        "ybe" => match &sig {
            Some(sig) => yang_baxter_specialized(b.r_matrix(), sig),
            None => yang_baxter(b.r_matrix()),
        },
        "orthogonality" => orthogonality_check(&b),
        "hopf" => Ok(hopf_checks(&b)),
        "classical-limit" => classical_limit_check(&b),
        _ => return Err(format!("unknown check {which:?}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(report_text(&rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_grid() {
        let out = contraction("iota,1").unwrap();
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows[3].split_whitespace().nth(1), Some("2"));
        assert!(out.ends_with("contraction: pass\n"));
        assert!(contraction("1,1").is_err());
        assert!(contraction("").is_err());
    }

    #[test]
    fn pairing_lines() {
        let out = pairing_table(3, "iota,iota").unwrap();
        assert!(out.lines().any(|l| l == "l11(t22) = 1"));
        assert!(pairing_table(3, "1").is_err());
    }

    #[test]
    fn checks() {
        assert_eq!(run_check(3, "cartesian", "", "hopf").unwrap(), "hopf: pass\n");
        assert_eq!(run_check(3, "symplectic", "iota,1", "ybe").unwrap(), "ybe: pass\n");
        assert!(run_check(3, "symplectic", "", "nope").is_err());
    }
}
