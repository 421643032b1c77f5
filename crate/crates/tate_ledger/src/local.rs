use crate::class::{Cell, Class, Kind, Row};
use crate::constants::ConstantStore;
use crate::page::{SpecPage, Terms};
use crate::LedgerError;

/// `Λ^k` of the standard representation of `Sp(2g)`, with Hodge twists:
/// `Λ^k = ⊕_j V_{1^{k-2j}}(-j)` for `k <= g`, and `Λ^k = (Λ^{2g-k})^∨(-g)` above.
pub fn lefschetz(g: usize, k: usize) -> Cell {
    if k > 2 * g {
        return Cell::new();
    }
    if k > g {
        let lower = lefschetz(g, 2 * g - k);
        let mut out = Cell::new();
        for (c, m) in lower.iter() {
            out.add(c.dual(g as i64).expect("local classes have duals"), *m);
        }
        return out;
    }
    let mut out = Cell::new();
    for j in 0..=k / 2 {
        let len = k - 2 * j;
        let class = if len == 0 { Class::tate(j as i64) } else { Class::local(g, &vec![1; len], j as i64) };
        out.add(class, torus_coh::Coeff::int(1));
    }
    out
}

/// Cohomology of the Kummer quotient `A/±1` of a `g`-dimensional abelian
/// variety, as local systems over `A_g`: the even exterior powers of `H^1`.
pub fn kummer_fibre(g: usize) -> Row {
    let mut r = Row::new();
    for k in (0..=2 * g).step_by(2) {
        r.add(k as i64, &lefschetz(g, k));
    }
    r
}

/// The constant holding `H_c^•(A_g; V_λ)` for an untwisted kind.
fn base_constant(g: usize, kind: &Kind) -> Result<&'static str, LedgerError> {
    let name = match (g, kind) {
        (3, Kind::Tate) => "a3.trivial",
        (3, Kind::Local { lambda, .. }) if lambda[..] == [1, 1, 0] => "a3.v110",
        (2, Kind::Tate) => "a2.trivial",
        (2, Kind::Local { lambda, .. }) if lambda[..] == [1, 1] => "a2.v11",
        (2, Kind::Local { lambda, .. }) if lambda[..] == [2, 0] => "a2.v20",
        (2, Kind::Local { lambda, .. }) if lambda[..] == [2, 2] => "a2.v22",
        _ => return Err(LedgerError::Constant(format!("no base cohomology for {kind:?} on A{g}"))),
    };
    Ok(name)
}

/// `E_2^{p,q} = H_c^p(A_g; R^q)` for a fibration whose compact-support fibre
/// cohomology `R^q` is given as local systems; twists pass through.
pub fn leray_e2(store: &ConstantStore, g: usize, fibre: &Row) -> Result<Terms, LedgerError> {
    let mut page = SpecPage::new("leray", 2);
    for (&q, cell) in fibre.iter() {
        for (class, m) in cell.iter() {
            let mult = m
                .as_int()
                .ok_or_else(|| LedgerError::Constant(format!("symbolic fibre multiplicity {m} at q = {q}")))?;
            let base = store.get(base_constant(g, &class.kind)?)?.row()?;
            for (&p, b) in base.iter() {
                page.put(p, q, &b.twisted(class.twist).scaled(mult));
            }
        }
    }
    Ok(page.entries)
}
