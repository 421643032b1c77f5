//! Cohomological inputs that are not recomputed here, each with an anchor
//! describing where it comes from. Assemblies read them only through
//! [`ConstantStore::get`], which logs every use.

use std::cell::RefCell;
use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};
use torus_coh::{Coeff, Symbol};

use crate::class::{Cell, Class, Row};
use crate::LedgerError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantValue {
    Row(Row),
    /// Several strata, one row each, in filtration order.
    Columns(Vec<Row>),
    Rank(u64),
    /// A vanishing or comparison statement with no numeric payload.
    Fact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constant {
    pub name: &'static str,
    pub anchor: &'static str,
    pub value: ConstantValue,
}

impl Constant {
    pub fn row(&self) -> Result<&Row, LedgerError> {
        match &self.value {
            ConstantValue::Row(r) => Ok(r),
            _ => Err(LedgerError::Constant(format!("{} is not a row", self.name))),
        }
    }

    pub fn columns(&self) -> Result<&[Row], LedgerError> {
        match &self.value {
            ConstantValue::Columns(c) => Ok(c),
            _ => Err(LedgerError::Constant(format!("{} is not a column list", self.name))),
        }
    }

    pub fn rank(&self) -> Result<u64, LedgerError> {
        match &self.value {
            ConstantValue::Rank(r) => Ok(*r),
            _ => Err(LedgerError::Constant(format!("{} is not a rank", self.name))),
        }
    }
}

#[derive(Debug)]
pub struct ConstantStore {
    items: Vec<Constant>,
    used: RefCell<BTreeSet<&'static str>>,
}

/// Manifest line for one constant.
#[derive(Clone, Debug, Serialize)]
pub struct ManifestEntry {
    pub name: &'static str,
    pub anchor: &'static str,
    pub value: Value,
    pub used: bool,
}

fn row(cells: &[(i64, &str)]) -> Row {
    Row::parse(cells).expect("well-formed constant")
}

fn cell(s: &str) -> Cell {
    s.parse().expect("well-formed constant")
}

fn local(lambda: &[u32], twist: i64) -> Cell {
    Cell::of(Class::local(2, lambda, twist), Coeff::int(1))
}

fn with(mut c: Cell, more: &[Cell]) -> Cell {
    for m in more {
        c.add_cell(m);
    }
    c
}

impl ConstantStore {
    pub fn standard() -> Self {
        let eps = Coeff::symbol(Symbol::Eps);
        let r = Coeff::symbol(Symbol::R);
        // H^3_c and H^4_c of A2 with V(2,2) coefficients agree up to grading; weights stay below p + 4.
        let h = |p: i64| Cell::of(Class::opaque("H", p + 4, 0), r);
        let mut v110 = row(&[(5, "Q(-1)")]);
        v110.add(8, &Cell::of(Class::tate(5), eps));
        v110.add(9, &Cell::of(Class::tate(5), eps));

        let items = vec![
            Constant {
                name: "a3.trivial",
                anchor: "Hain: compact-support cohomology of A3 with constant coefficients; degree 6 is an extension of Q(-3) by Q",
                value: ConstantValue::Row(row(&[(6, "Q(-3) + Q"), (8, "Q(-4)"), (10, "Q(-5)"), (12, "Q(-6)")])),
            },
            Constant {
                name: "a3.v110",
                anchor: "compact-support cohomology of A3 with coefficients in V(1,1,0); the degree 8 and 9 classes have rank eps and weight 10",
                value: ConstantValue::Row(v110),
            },
            Constant {
                name: "a2.trivial",
                anchor: "compact-support cohomology of A2 with constant coefficients (Poincare dual of 1 and lambda_1)",
                value: ConstantValue::Row(row(&[(4, "Q(-2)"), (6, "Q(-3)")])),
            },
            Constant {
                name: "a2.v11",
                anchor: "compact-support cohomology of A2 with coefficients in V(1,1): only H^3_c = Q",
                value: ConstantValue::Row(row(&[(3, "Q")])),
            },
            Constant {
                name: "a2.v20",
                anchor: "compact-support cohomology of A2 with coefficients in V(2,0): only H^3_c = Q(-1)",
                value: ConstantValue::Row(row(&[(3, "Q(-1)")])),
            },
            Constant {
                name: "a2.v22",
                anchor: "compact-support cohomology of A2 with coefficients in V(2,2): H^3_c and H^4_c, both of rank r, of unknown Hodge type",
                value: ConstantValue::Row(Row::from_cells(&[(3, h(3)), (4, h(4))])),
            },
            Constant {
                name: "rank2.closed",
                anchor: "Sp(4) decomposition of the cohomology of the discriminant part of the rank-two fibre (dimensions recomputed from the invariant tables)",
                value: ConstantValue::Row(Row::from_cells(&[
                    (0, cell("Q")),
                    (2, with(cell("Q(-1)"), &[local(&[1, 1], 0)])),
                    (4, with(cell("Q(-2)^2"), &[local(&[1, 1], 1), local(&[2, 2], 0)])),
                    (6, with(cell("Q(-3)"), &[local(&[1, 1], 2)])),
                    (8, cell("Q(-4)")),
                ])),
            },
            Constant {
                name: "rank2.open",
                anchor: "Sp(4) decomposition of the cohomology of the C*-bundle part of the rank-two fibre (dimensions recomputed from its Leray sequence)",
                value: ConstantValue::Row(Row::from_cells(&[
                    (0, cell("Q")),
                    (2, with(cell("Q(-1)"), &[local(&[1, 1], 0)])),
                    (4, with(cell("Q(-2)^2"), &[local(&[2, 2], 0)])),
                    (5, local(&[2, 0], 2)),
                    (7, local(&[1, 1], 3)),
                ])),
            },
            Constant {
                name: "beta3.strata",
                anchor: "compact-support cohomology of the four torus-rank-three strata (cones of dimension 6, 5, 4 and 3), from their fibrations over A1",
                value: ConstantValue::Columns(vec![
                    row(&[(2, "Q(-1)"), (4, "Q(-2)"), (6, "Q(-3)"), (8, "Q(-4)")]),
                    row(&[(6, "Q(-3)"), (8, "Q(-4)^2"), (10, "Q(-5)")]),
                    row(&[(5, "Q"), (8, "Q(-4) + Q(-2)"), (10, "Q(-5)^3"), (12, "Q(-6)^2")]),
                    row(&[(7, "Q(-1)"), (9, "Q(-2)"), (12, "Q(-6)"), (14, "Q(-7)")]),
                ]),
            },
            Constant {
                name: "jacobian.strata",
                anchor: "compact-support cohomology of the strata of the closure of the Jacobian locus in A4 (products of lower-genus Jacobians and J4 itself)",
                value: ConstantValue::Columns(vec![
                    row(&[(8, "Q(-4)")]),
                    row(&[(10, "Q(-5)")]),
                    row(&[(12, "Q(-6)")]),
                    row(&[(8, "Q(-1)"), (12, "Q(-6)"), (14, "Q(-7)")]),
                    row(&[(13, "Q(-6)"), (14, "Q(-7)"), (16, "Q(-8)"), (18, "Q(-9)")]),
                ]),
            },
            Constant {
                name: "jacobian.d",
                anchor: "the map H^12_c Q(-6)^2 -> H^13_c Q(-6) on the Jacobian closure is nonzero, by the tautological relation on the moduli of genus-4 curves",
                value: ConstantValue::Rank(1),
            },
            Constant {
                name: "kummer.degeneration",
                anchor: "the Leray sequence of the universal Kummer family over A3 degenerates at E2 (a smooth projective family up to finite quotients)",
                value: ConstantValue::Rank(0),
            },
            Constant {
                name: "open.a4",
                anchor: "the complement of the Jacobian closure in A4 is affine of dimension 10: H^k_c vanishes for k < 10, and H^20_c = Q(-10)",
                value: ConstantValue::Row(row(&[(20, "Q(-10)")])),
            },
            Constant {
                name: "perfect.weight2",
                anchor: "the weight-two class of the perfect torus-rank-4 stratum is the image of the weight-two class of the Voronoi one, so it dies as that one does",
                value: ConstantValue::Fact,
            },
            Constant {
                name: "h.vanishing",
                anchor: "H^3_c(A2; V(2,2)) = H^4_c(A2; V(2,2)) = 0, from the recent computation of the cohomology of local systems on A2; sets r = 0",
                value: ConstantValue::Fact,
            },
        ];
        ConstantStore { items, used: RefCell::new(BTreeSet::new()) }
    }

    pub fn get(&self, name: &str) -> Result<&Constant, LedgerError> {
        let c = self
            .items
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| LedgerError::Constant(format!("unknown constant {name}")))?;
        self.used.borrow_mut().insert(c.name);
        Ok(c)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.items.iter().map(|c| c.name).collect()
    }

    pub fn used(&self) -> Vec<&'static str> {
        self.used.borrow().iter().copied().collect()
    }

    pub fn manifest(&self) -> Vec<ManifestEntry> {
        let used = self.used.borrow();
        self.items
            .iter()
            .map(|c| ManifestEntry { name: c.name, anchor: c.anchor, value: value_json(&c.value), used: used.contains(c.name) })
            .collect()
    }

    pub fn manifest_json(&self) -> Value {
        json!({ "constants": self.manifest() })
    }
}

fn row_json(r: &Row) -> Value {
    Value::Object(r.iter().map(|(k, c)| (k.to_string(), Value::String(c.to_string()))).collect())
}

fn value_json(v: &ConstantValue) -> Value {
    match v {
        ConstantValue::Row(r) => json!({ "row": row_json(r) }),
        ConstantValue::Columns(cs) => json!({ "columns": cs.iter().map(row_json).collect::<Vec<_>>() }),
        ConstantValue::Rank(k) => json!({ "rank": k }),
        ConstantValue::Fact => json!({ "fact": true }),
    }
}
