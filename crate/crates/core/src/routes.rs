//! Uniform access to the independent computation routes for single numbers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::closed_forms::{f02_coefficient, one_part_single_fd};
use crate::cohft::spin_elsv;
use crate::error::{Error, Result};
use crate::fock::vev_spin_single;
use crate::hurwitz::{connected_single, single_b};
use crate::partitions::Partition;
use crate::rational::Q;
use crate::tr::{expand_cylinder, expand_disk, expand_hurwitz, TrEngine};

/// Largest `2g − 2 + n` handled by the recursion route.
pub const TR_MAX_EULER: i64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    Characters,
    Fock,
    Closed,
    Tr,
    Elsv,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::Characters,
        Route::Fock,
        Route::Closed,
        Route::Tr,
        Route::Elsv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Characters => "characters",
            Route::Fock => "fock",
            Route::Closed => "closed",
            Route::Tr => "tr",
            Route::Elsv => "elsv",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown method {s:?}")))
    }
}

/// True when no spin cover exists: an even part, odd `r`, or a non-integral insertion count.
pub fn structural_zero(g: u32, mu: &Partition, r: u32) -> bool {
    r == 0 || r % 2 == 1 || !mu.is_odd() || single_b(g as i64, mu, r).is_err()
}

fn engine(r: u32) -> Result<Arc<TrEngine>> {
    static ENGINES: OnceLock<RwLock<HashMap<u32, Arc<TrEngine>>>> = OnceLock::new();
    let map = ENGINES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(e) = map.read().expect("engine lock").get(&r) {
        return Ok(e.clone());
    }
    let e = Arc::new(TrEngine::spin(r)?);
    Ok(map
        .write()
        .expect("engine lock")
        .entry(r)
        .or_insert(e)
        .clone())
}

/// Connected `h_{g;μ}` along `route`. Out-of-scope requests give [`Error::Scope`].
pub fn single(route: Route, g: u32, mu: &Partition, r: u32) -> Result<Q> {
    if mu.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    match route {
        Route::Characters => connected_single(g, mu, r),
        Route::Fock => {
            if mu.len() != 1 {
                return Err(Error::Scope(
                    "the vacuum-expectation route handles one-part μ".into(),
                ));
            }
            vev_spin_single(g, mu, r)
        }
        Route::Closed => match (g, mu.parts()) {
            (_, [m]) => one_part_single_fd(g, *m, r),
            (0, [a, b]) => {
                single_b(0, mu, r)?;
                f02_coefficient(r, *a, *b)
            }
            _ => Err(Error::Scope(
                "closed formulas cover ℓ(μ) = 1 and (g, ℓ(μ)) = (0, 2)".into(),
            )),
        },
        Route::Tr => {
            let n = mu.len();
            if 2 * g as i64 - 2 + n as i64 > TR_MAX_EULER {
                return Err(Error::Scope(format!(
                    "recursion route needs 2g − 2 + n ≤ {TR_MAX_EULER}"
                )));
            }
            single_b(g as i64, mu, r)?;
            let degree = mu.size();
            let expansion = match (g, n) {
                (0, 1) => expand_disk(r, degree)?,
                (0, 2) => expand_cylinder(r, degree)?,
                _ => expand_hurwitz(engine(r)?.correlator(g, n)?.as_ref(), r, degree)?,
            };
            expansion
                .get(mu.parts())
                .cloned()
                .ok_or_else(|| Error::Missing(format!("coefficient of {mu} in the expansion")))
        }
        Route::Elsv => {
            if g > 2 || mu.len() > 3 {
                return Err(Error::Scope("ELSV route needs g ≤ 2 and n ≤ 3".into()));
            }
            spin_elsv(g, mu, r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn routes_agree_on_a_small_cell() {
        let mu = Partition::single(11);
        for route in Route::ALL {
            assert_eq!(single(route, 1, &mu, 6).unwrap(), q(187, 2), "{route}");
        }
    }

    #[test]
    fn scope_and_structure() {
        assert!(structural_zero(0, &Partition::single(2), 2));
        assert!(matches!(
            single(Route::Fock, 0, &Partition::new(vec![3, 1]).unwrap(), 2),
            Err(Error::Scope(_))
        ));
        assert_eq!("tr".parse::<Route>().unwrap(), Route::Tr);
    }
}
