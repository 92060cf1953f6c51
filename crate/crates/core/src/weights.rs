//! Weight systems of irreducible modules.
//!
//! `racah_multiplicities` is the production path. `freudenthal_multiplicities`
//! walks every weight (not just dominant ones) with Freudenthal's formula and
//! shares nothing with it beyond the root data, so the two cross-check.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::cartan::{AlgebraId, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::weyl::{fold_dominant, signed_rho_orbit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: u64,
    pub max_group_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 1_000_000,
            max_group_order: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    pub highest: Weight,
    #[serde(with = "crate::cartan::mult_list")]
    pub mults: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn mult(&self, beta: &Weight) -> u64 {
        self.mults.get(beta).copied().unwrap_or(0)
    }

    pub fn contains(&self, beta: &Weight) -> bool {
        self.mults.contains_key(beta)
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.mults.iter().map(|(w, &m)| (w, m))
    }

    pub fn dominant(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.iter().filter(|(w, _)| w.is_dominant())
    }
}

pub fn dimension(ws: &WeightSystem) -> u64 {
    ws.mults.values().sum()
}

fn depth(rs: &RootSystem, lambda: &Weight, beta: &Weight) -> Option<i64> {
    let c = rs.simple_root_coords(&(lambda - beta))?;
    c.iter().all(|&x| x >= 0).then(|| c.iter().sum())
}

/// Dominant weights `β ≤ λ`. Every such β is reachable from λ through
/// dominant weights by subtracting positive roots.
pub fn dominant_below(rs: &RootSystem, lambda: &Weight) -> Result<BTreeSet<Weight>> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(b) = queue.pop_front() {
        for root in rs.positive_roots() {
            let c = &b - &root.weight;
            if c.is_dominant() && seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    Ok(seen)
}

fn check_dimension(rs: &RootSystem, lambda: &Weight, limits: &Limits) -> Result<()> {
    let dim = rs.weyl_dimension(lambda);
    if dim > u128::from(limits.max_dim) {
        return Err(Error::DimensionTooLarge {
            dim,
            bound: limits.max_dim,
        });
    }
    Ok(())
}

pub fn racah_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<WeightSystem> {
    racah_multiplicities_with(rs, lambda, &Limits::default())
}

/// `Mult(ν) = −Σ_{w≠1} ε(w) Mult(ν+ρ−wρ)`, over dominant ν by increasing depth.
pub fn racah_multiplicities_with(rs: &RootSystem, lambda: &Weight, limits: &Limits) -> Result<WeightSystem> {
    let below = dominant_below(rs, lambda)?;
    check_dimension(rs, lambda, limits)?;
    let orbit = signed_rho_orbit(rs, limits.max_group_order)?;
    // ρ − wρ for w ≠ 1
    let shifts: Vec<(Weight, i64)> = orbit
        .entries
        .iter()
        .skip(1)
        .map(|(w_rho, s)| (rs.rho() - w_rho, i64::from(*s)))
        .collect();

    let mut order: Vec<(i64, Weight)> = below
        .into_iter()
        .map(|b| (depth(rs, lambda, &b).expect("dominant_below stays below λ"), b))
        .collect();
    order.sort();

    let mut dom: HashMap<Weight, u64> = HashMap::new();
    dom.insert(lambda.clone(), 1);
    for (_, nu) in order.iter().skip(1) {
        let mut total: i64 = 0;
        for (shift, sign) in &shifts {
            let target = nu + shift;
            let rep = fold_dominant(rs, &target).weight;
            if let Some(&m) = dom.get(&rep) {
                total -= sign * m as i64;
            }
        }
        assert!(total >= 0, "negative multiplicity {total} at {nu} in V({lambda})");
        if total > 0 {
            dom.insert(nu.clone(), total as u64);
        }
    }

    let mut mults = BTreeMap::new();
    for (nu, m) in dom {
        for w in rs.orbit_of(&nu) {
            mults.insert(w, m);
        }
    }
    Ok(WeightSystem {
        highest: lambda.clone(),
        mults,
    })
}

pub fn freudenthal_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<WeightSystem> {
    freudenthal_multiplicities_with(rs, lambda, &Limits::default())
}

/// Freudenthal's formula on every weight, layer by layer below λ:
/// `((λ+ρ,λ+ρ) − (ν+ρ,ν+ρ)) m(ν) = 2 Σ_{α>0} Σ_{j≥1} (ν+jα, α) m(ν+jα)`.
pub fn freudenthal_multiplicities_with(rs: &RootSystem, lambda: &Weight, limits: &Limits) -> Result<WeightSystem> {
    rs.check(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    check_dimension(rs, lambda, limits)?;
    let top = lambda + rs.rho();
    let top_norm = rs.inner_scaled(&top, &top);
    let mut mults: BTreeMap<Weight, u64> = BTreeMap::from([(lambda.clone(), 1)]);
    let mut layer = vec![lambda.clone()];
    while !layer.is_empty() {
        let mut next: BTreeSet<Weight> = BTreeSet::new();
        for nu in &layer {
            for alpha in rs.simple_roots() {
                next.insert(nu - alpha);
            }
        }
        layer.clear();
        for nu in next {
            let shifted = &nu + rs.rho();
            let denom = top_norm - rs.inner_scaled(&shifted, &shifted);
            let mut numer: i64 = 0;
            for root in rs.positive_roots() {
                let mut up = &nu + &root.weight;
                while let Some(&m) = mults.get(&up) {
                    numer += rs.inner_scaled(&up, &root.weight) * m as i64;
                    up += &root.weight;
                }
            }
            numer *= 2;
            if numer == 0 {
                continue;
            }
            assert!(
                denom > 0 && numer % denom == 0,
                "Freudenthal division {numer}/{denom} failed at {nu}"
            );
            let m = numer / denom;
            assert!(m > 0, "negative multiplicity at {nu}");
            mults.insert(nu.clone(), m as u64);
            layer.push(nu);
        }
    }
    Ok(WeightSystem {
        highest: lambda.clone(),
        mults,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Simple root `α_j`, 1-based.
    Simple(usize),
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightString {
    pub r: u64,
    pub q: u64,
}

/// The string `β − rδ, …, β + qδ` inside the support of `ws`.
pub fn weight_string(rs: &RootSystem, ws: &WeightSystem, beta: &Weight, direction: Direction) -> Result<WeightString> {
    if !ws.contains(beta) {
        return Err(Error::NotInSupport(beta.clone()));
    }
    let delta = match direction {
        Direction::Simple(j) => {
            if j == 0 || j > rs.rank() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    rank: rs.rank(),
                });
            }
            rs.simple_root(j - 1).clone()
        }
        Direction::Theta => rs.theta().clone(),
    };
    let walk = |step: &Weight| {
        let mut n = 0;
        let mut x = beta + step;
        while ws.contains(&x) {
            n += 1;
            x += step;
        }
        n
    };
    Ok(WeightString {
        r: walk(&-&delta),
        q: walk(&delta),
    })
}

type CacheKey = (AlgebraId, Weight);

struct CacheEntry {
    ws: Arc<WeightSystem>,
    last_used: AtomicU64,
}

/// LRU cache of weight systems with an optional on-disk layer.
pub struct WeightCache {
    entries: RwLock<HashMap<CacheKey, CacheEntry>>,
    clock: AtomicU64,
    capacity: usize,
    dir: Option<PathBuf>,
}

impl WeightCache {
    pub fn new(capacity: usize, dir: Option<PathBuf>) -> Self {
        WeightCache {
            entries: RwLock::new(HashMap::new()),
            clock: AtomicU64::new(0),
            capacity: capacity.max(1),
            dir,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn tick(&self) -> u64 {
        self.clock.fetch_add(1, Ordering::Relaxed)
    }

    fn file_for(&self, key: &CacheKey) -> Option<PathBuf> {
        let labels: Vec<String> = key.1.labels().iter().map(|n| n.to_string()).collect();
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}_{}.json", key.0, labels.join("_"))))
    }

    fn load(&self, key: &CacheKey) -> Option<WeightSystem> {
        let text = std::fs::read_to_string(self.file_for(key)?).ok()?;
        let ws: WeightSystem = serde_json::from_str(&text).ok()?;
        (ws.highest == key.1).then_some(ws)
    }

    fn store(&self, key: &CacheKey, ws: &WeightSystem) {
        // the disk layer is best effort; failures only cost a recomputation
        if let Some(path) = self.file_for(key) {
            if let Some(parent) = path.parent() {
                let _ = std::fs::create_dir_all(parent);
            }
            if let Ok(text) = serde_json::to_string(ws) {
                let _ = std::fs::write(path, text);
            }
        }
    }

    pub fn get_or_compute(&self, rs: &RootSystem, lambda: &Weight, limits: &Limits) -> Result<Arc<WeightSystem>> {
        let key = (rs.id(), lambda.clone());
        if let Some(e) = self.entries.read().unwrap().get(&key) {
            e.last_used.store(self.tick(), Ordering::Relaxed);
            return Ok(e.ws.clone());
        }
        let ws = match self.load(&key) {
            Some(ws) => ws,
            None => {
                let ws = racah_multiplicities_with(rs, lambda, limits)?;
                self.store(&key, &ws);
                ws
            }
        };
        let ws = Arc::new(ws);
        let mut map = self.entries.write().unwrap();
        if map.len() >= self.capacity && !map.contains_key(&key) {
            let oldest = map
                .iter()
                .min_by_key(|(_, e)| e.last_used.load(Ordering::Relaxed))
                .map(|(k, _)| k.clone());
            if let Some(k) = oldest {
                map.remove(&k);
            }
        }
        let entry = map.entry(key).or_insert_with(|| CacheEntry {
            ws: ws.clone(),
            last_used: AtomicU64::new(0),
        });
        entry.last_used.store(self.tick(), Ordering::Relaxed);
        Ok(entry.ws.clone())
    }
}

/// Environment variable naming a directory for persisted weight systems.
pub const CACHE_DIR_VAR: &str = "FUSIONKIT_CACHE_DIR";

static GLOBAL_CACHE: OnceLock<WeightCache> = OnceLock::new();

pub fn global_cache() -> &'static WeightCache {
    GLOBAL_CACHE.get_or_init(|| {
        let dir = std::env::var_os(CACHE_DIR_VAR).map(PathBuf::from);
        WeightCache::new(4096, dir)
    })
}

/// Cached Racah weight system.
pub fn weight_system(rs: &RootSystem, lambda: &Weight) -> Result<Arc<WeightSystem>> {
    global_cache().get_or_compute(rs, lambda, &Limits::default())
}

pub fn weight_system_with(rs: &RootSystem, lambda: &Weight, limits: &Limits) -> Result<Arc<WeightSystem>> {
    global_cache().get_or_compute(rs, lambda, limits)
}
