//! The stable JSON form of a Mackey functor value.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::dihedral::{Grading, GroupSpec, SubgroupTag};
use crate::linalg::{FgAbGroup, FgAbMap, IntMatrix, Presentation};
use crate::mackey::{LevelValue, MackeyAnswer, StructureMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    pub basis: Vec<String>,
    /// Order of each basis element, 0 for infinite order.
    pub orders: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    /// Row `i` holds the coefficients of target generator `i`.
    pub matrix: Vec<Vec<i64>>,
    pub kernel: FgAbGroup,
    pub image: FgAbGroup,
    pub cokernel: FgAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyJson {
    pub p: u32,
    pub grading: [i64; 3],
    pub source: String,
    pub levels: BTreeMap<String, LevelJson>,
    pub maps: BTreeMap<String, MapJson>,
    /// `weyl` on the Cp level, `e_xi` and `e_tau` on the e level.
    pub actions: BTreeMap<String, MapJson>,
}

fn map_json(f: &FgAbMap) -> MapJson {
    let inv = f.invariants();
    let m = &f.matrix;
    MapJson {
        matrix: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| i64::try_from(&m[(i, j)]).expect("small coefficients")).collect())
            .collect(),
        kernel: inv.kernel,
        image: inv.image,
        cokernel: inv.cokernel,
    }
}

fn orders_of(p: &Presentation) -> Vec<u64> {
    // Presentations built from orders have one relation column per torsion
    // generator.
    let mut orders = vec![0u64; p.gens];
    for j in 0..p.relations.cols() {
        for i in 0..p.gens {
            let v = &p.relations[(i, j)];
            if *v != BigInt::from(0) {
                orders[i] = u64::try_from(v).expect("small orders");
            }
        }
    }
    orders
}

impl MackeyJson {
    pub fn from_answer(ans: &MackeyAnswer, source: &str) -> Self {
        let levels = ans
            .levels
            .iter()
            .map(|(l, v)| {
                let g = v.group();
                (
                    l.name().to_string(),
                    LevelJson {
                        free_rank: g.free_rank,
                        torsion: g.torsion_u64(),
                        basis: v.basis.clone(),
                        orders: orders_of(&v.presentation),
                    },
                )
            })
            .collect();
        let maps = ans.maps.iter().map(|(m, f)| (m.name().to_string(), map_json(f))).collect();
        let actions = [("weyl", &ans.weyl), ("e_xi", &ans.e_xi), ("e_tau", &ans.e_tau)]
            .into_iter()
            .map(|(n, f)| (n.to_string(), map_json(f)))
            .collect();
        MackeyJson {
            p: ans.spec.p(),
            grading: ans.grading.as_array(),
            source: source.to_string(),
            levels,
            maps,
            actions,
        }
    }

    /// Rebuilds the answer, so that two renderings can be compared by
    /// their signatures.
    pub fn to_answer(&self) -> Result<MackeyAnswer, String> {
        let spec = GroupSpec::new(self.p as u64).map_err(|e| e.to_string())?;
        let mut levels = BTreeMap::new();
        for l in SubgroupTag::ALL {
            let lj = self.levels.get(l.name()).ok_or_else(|| format!("missing level {l}"))?;
            let orders: Vec<BigInt> = lj.orders.iter().map(|&o| BigInt::from(o)).collect();
            levels.insert(l, LevelValue::from_orders(&orders, lj.basis.clone()));
        }
        let build = |mj: &MapJson, s: SubgroupTag, t: SubgroupTag| -> Result<FgAbMap, String> {
            let (rows, cols) = (levels[&t].gens(), levels[&s].gens());
            let mut m = IntMatrix::zeros(rows, cols);
            if mj.matrix.len() != rows || mj.matrix.iter().any(|r| r.len() != cols) {
                return Err(format!("matrix {s}→{t} has the wrong shape"));
            }
            for (i, row) in mj.matrix.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m[(i, j)] = BigInt::from(v);
                }
            }
            FgAbMap::new(levels[&s].presentation.clone(), levels[&t].presentation.clone(), m).map_err(|e| e.to_string())
        };
        let mut maps = BTreeMap::new();
        for sm in StructureMap::ALL {
            let (s, t) = sm.levels();
            let mj = self.maps.get(sm.name()).ok_or_else(|| format!("missing map {sm}"))?;
            maps.insert(sm, build(mj, s, t)?);
        }
        let action = |name: &str, l: SubgroupTag| {
            self.actions
                .get(name)
                .ok_or_else(|| format!("missing action {name}"))
                .and_then(|mj| build(mj, l, l))
        };
        Ok(MackeyAnswer {
            spec,
            grading: Grading::new(self.grading[0], self.grading[1], self.grading[2]),
            weyl: action("weyl", SubgroupTag::Cp)?,
            e_xi: action("e_xi", SubgroupTag::E)?,
            e_tau: action("e_tau", SubgroupTag::E)?,
            levels,
            maps,
        })
    }
}
