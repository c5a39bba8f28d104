//! Pointed simplicial fans in `N_R = R^n`.
//!
//! A [`Fan`] is stored by its primitive ray generators and its
//! inclusion-maximal cones. Cones are sorted sets of ray indices. The face
//! closure is computed once at construction; star fans, basis completions and
//! the lattice of linear functions are cached lazily.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lattice::{
    complete_to_unimodular_basis, hermite_normal_form, hnf_pivots, quotient_projection,
    rational_coordinates, smith_diagonal, BasisCompletion, Int, IntMatrix, LatticeError,
    LatticeVector,
};
use crate::lp::find_nonnegative_solution;

const PROBE_SEED: u64 = 0x5eed_fa11;

/// A simplicial cone, given by the sorted indices of its rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn origin() -> Self {
        Cone(Vec::new())
    }

    pub fn ray(i: usize) -> Self {
        Cone(vec![i])
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains(*r))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().copied().filter(|r| other.contains(*r)).collect())
    }

    pub fn union(&self, other: &Cone) -> Cone {
        Cone::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn without(&self, ray: usize) -> Cone {
        Cone(self.0.iter().copied().filter(|&r| r != ray).collect())
    }

    pub fn with(&self, ray: usize) -> Cone {
        let mut v = self.0.clone();
        v.push(ray);
        Cone::new(v)
    }

    /// Rays of `self` not in `other`.
    pub fn minus(&self, other: &Cone) -> Vec<usize> {
        self.0.iter().copied().filter(|r| !other.contains(*r)).collect()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ray {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("ray {index} = {ray} is not primitive")]
    NonPrimitiveRay { index: usize, ray: LatticeVector },
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone {cone:?} is malformed: {reason}")]
    InvalidCone { cone: Vec<usize>, reason: String },
    #[error("cone {0} is not simplicial")]
    NotSimplicial(Cone),
    #[error("cone {cone} is not unimodular (Smith diagonal {diagonal:?})")]
    NotUnimodular { cone: Cone, diagonal: Vec<Int> },
    #[error("cones {0} and {1} do not meet in a common face")]
    BadIntersection(Cone, Cone),
    #[error("cone {0} is not in the fan")]
    ConeNotInFan(Cone),
    #[error("fan is not pure")]
    NotPure,
    #[error("fan is not unimodular")]
    NotUnimodularFan,
    #[error("cannot subdivide at the origin cone")]
    OriginSubdivision,
    #[error("subdivision does not cover cone {0}")]
    SupportChanged(Cone),
}

impl FanError {
    pub fn code(&self) -> &'static str {
        match self {
            FanError::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            FanError::ZeroRay(_) | FanError::NonPrimitiveRay { .. } => "NON_PRIMITIVE_RAY",
            FanError::DuplicateRay(..) => "DUPLICATE_RAY",
            FanError::InvalidCone { .. } => "INVALID_CONE",
            FanError::NotSimplicial(_) => "NOT_SIMPLICIAL",
            FanError::NotUnimodular { .. } | FanError::NotUnimodularFan => "NOT_UNIMODULAR",
            FanError::BadIntersection(..) => "BAD_INTERSECTION",
            FanError::ConeNotInFan(_) => "CONE_NOT_IN_FAN",
            FanError::NotPure => "NOT_PURE",
            FanError::OriginSubdivision => "ORIGIN_SUBDIVISION",
            FanError::SupportChanged(_) => "SUPPORT_CHANGED",
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
struct FanKeyData {
    ambient_dim: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Cone>,
}

/// Structural identity of a fan: ambient dimension, ordered rays and sorted
/// maximal cones. Cheap to clone and hash.
#[derive(Debug, Clone)]
pub struct FanKey {
    data: Arc<FanKeyData>,
    fingerprint: u64,
}

impl FanKey {
    fn new(ambient_dim: usize, rays: &[LatticeVector], cones: &[Cone]) -> Self {
        let data = FanKeyData { ambient_dim, rays: rays.to_vec(), cones: cones.to_vec() };
        let mut h = DefaultHasher::new();
        data.ambient_dim.hash(&mut h);
        data.rays.hash(&mut h);
        data.cones.hash(&mut h);
        FanKey { data: Arc::new(data), fingerprint: h.finish() }
    }
}

impl PartialEq for FanKey {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && (Arc::ptr_eq(&self.data, &other.data) || self.data == other.data)
    }
}

impl Eq for FanKey {}

impl Hash for FanKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint.hash(state);
    }
}

/// Hermite basis of the lattice `L(Σ) ⊆ Z^{Σ(1)}` of restrictions of linear functions.
#[derive(Debug, Clone)]
pub struct LinearLattice {
    /// Nonzero rows of the Hermite form; row `r` equals `functionals[r]` evaluated on the rays.
    pub rows: Vec<LatticeVector>,
    pub pivots: Vec<usize>,
    /// Elements of `M` realizing each row.
    pub functionals: Vec<LatticeVector>,
}

/// A validated simplicial fan.
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<LatticeVector>,
    maximal_cones: Vec<Cone>,
    cones_by_dim: Vec<Vec<Cone>>,
    cone_set: HashSet<Cone>,
    unimodular: bool,
    key: FanKey,
    stars: Mutex<HashMap<Cone, Arc<StarFan>>>,
    bases: Mutex<HashMap<Cone, Arc<BasisCompletion>>>,
    linear: OnceLock<LinearLattice>,
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fan")
            .field("ambient_dim", &self.ambient_dim)
            .field("rays", &self.rays)
            .field("maximal_cones", &self.maximal_cones)
            .field("unimodular", &self.unimodular)
            .finish()
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Fan {}

/// The star fan `Σ^σ` in the quotient lattice `N / Span_Z(σ)`.
#[derive(Debug)]
pub struct StarFan {
    pub fan: Arc<Fan>,
    /// Star ray index to parent ray index.
    pub ray_lift: Vec<usize>,
    pub projection: IntMatrix,
    pub section_basis: Arc<BasisCompletion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceFailure {
    pub ridge: Cone,
    /// Sum of the generators opposite the ridge.
    pub sum: LatticeVector,
    /// Image of `sum` in `N / Span_Z(ridge)`.
    pub residual: LatticeVector,
}

#[derive(Debug, Clone)]
pub struct Subdivision {
    pub fan: Arc<Fan>,
    pub coarse: Arc<Fan>,
    pub tau: Cone,
    pub new_ray: usize,
}

impl Subdivision {
    /// Whether a new ray was added (false when subdividing at a ray).
    pub fn adds_ray(&self) -> bool {
        self.tau.dim() > 1
    }
}

fn check_rays(ambient_dim: usize, rays: &[LatticeVector]) -> Result<(), FanError> {
    let mut seen: HashMap<&LatticeVector, usize> = HashMap::new();
    for (i, r) in rays.iter().enumerate() {
        if r.dim() != ambient_dim {
            return Err(FanError::DimensionMismatch { index: i, expected: ambient_dim, found: r.dim() });
        }
        if r.is_zero() {
            return Err(FanError::ZeroRay(i));
        }
        if !r.is_primitive() {
            return Err(FanError::NonPrimitiveRay { index: i, ray: r.clone() });
        }
        if let Some(&j) = seen.get(r) {
            return Err(FanError::DuplicateRay(j, i));
        }
        seen.insert(r, i);
    }
    Ok(())
}

fn normalize_cones(num_rays: usize, cones: &[Vec<usize>]) -> Result<Vec<Cone>, FanError> {
    let mut out = BTreeSet::new();
    for c in cones {
        if let Some(&bad) = c.iter().find(|&&r| r >= num_rays) {
            return Err(FanError::InvalidCone {
                cone: c.clone(),
                reason: format!("ray index {bad} out of range"),
            });
        }
        let cone = Cone::new(c.clone());
        if cone.dim() != c.len() {
            return Err(FanError::InvalidCone { cone: c.clone(), reason: "repeated ray index".into() });
        }
        out.insert(cone);
    }
    Ok(inclusion_maximal(num_rays, out))
}

/// Drops cones contained in others and adds singleton cones for unused rays.
fn inclusion_maximal(num_rays: usize, cones: BTreeSet<Cone>) -> Vec<Cone> {
    let all: Vec<Cone> = cones.into_iter().collect();
    let mut maximal: Vec<Cone> = all
        .iter()
        .filter(|c| !all.iter().any(|d| d != *c && c.is_face_of(d)))
        .cloned()
        .collect();
    let used: HashSet<usize> = maximal.iter().flat_map(|c| c.rays().iter().copied()).collect();
    for r in 0..num_rays {
        if !used.contains(&r) {
            maximal.push(Cone::ray(r));
        }
    }
    if maximal.is_empty() {
        maximal.push(Cone::origin());
    }
    maximal.sort();
    maximal
}

fn cone_vectors(rays: &[LatticeVector], cone: &Cone) -> Vec<LatticeVector> {
    cone.rays().iter().map(|&i| rays[i].clone()).collect()
}

/// Whether simplicial cones `a` and `b` meet exactly in the face spanned by their shared rays.
fn meet_in_common_face(rays: &[LatticeVector], a: &Cone, b: &Cone) -> bool {
    let shared = a.intersection(b);
    let only_a = a.minus(&shared);
    let only_b = b.minus(&shared);
    if only_a.is_empty() || only_b.is_empty() {
        return true;
    }
    // Look for λ, μ >= 0 with Σ λ_i u_i = Σ μ_j v_j and unit mass off the shared face.
    let n = rays.first().map_or(0, LatticeVector::dim);
    let cols: Vec<(usize, bool)> =
        a.rays().iter().map(|&r| (r, true)).chain(b.rays().iter().map(|&r| (r, false))).collect();
    let to_q = |v: &Int| BigRational::from_integer(v.clone());
    let mut matrix: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            cols.iter()
                .map(|&(r, side_a)| {
                    let x = to_q(&rays[r].0[row]);
                    if side_a {
                        x
                    } else {
                        -x
                    }
                })
                .collect()
        })
        .collect();
    let mut rhs = vec![BigRational::zero(); n];
    let mass: Vec<BigRational> = cols
        .iter()
        .map(|&(r, side_a)| {
            let off = if side_a { only_a.contains(&r) } else { only_b.contains(&r) };
            BigRational::from_integer(Int::from(u8::from(off)))
        })
        .collect();
    matrix.push(mass);
    rhs.push(BigRational::from_integer(Int::from(1)));
    find_nonnegative_solution(&matrix, &rhs).is_none()
}

impl Fan {
    /// Validates and builds a fan. See [`FanError`] for the checks performed.
    pub fn build(
        ambient_dim: usize,
        rays: Vec<LatticeVector>,
        maximal_cones: &[Vec<usize>],
        require_unimodular: bool,
    ) -> Result<Fan, FanError> {
        check_rays(ambient_dim, &rays)?;
        let cones = normalize_cones(rays.len(), maximal_cones)?;
        let mut unimodular = true;
        for c in &cones {
            if c.dim() == 0 {
                continue;
            }
            let diag = smith_diagonal(&IntMatrix::from_cols(ambient_dim, &cone_vectors(&rays, c)));
            if diag.len() < c.dim() {
                return Err(FanError::NotSimplicial(c.clone()));
            }
            if !diag.iter().all(|d| d == &Int::from(1)) {
                if require_unimodular {
                    return Err(FanError::NotUnimodular { cone: c.clone(), diagonal: diag });
                }
                unimodular = false;
            }
        }
        for (i, a) in cones.iter().enumerate() {
            for b in &cones[i + 1..] {
                if !meet_in_common_face(&rays, a, b) {
                    return Err(FanError::BadIntersection(a.clone(), b.clone()));
                }
            }
        }
        Ok(Fan::assemble(ambient_dim, rays, cones, unimodular))
    }

    /// Builds a fan from data known to be valid (stars, products, subdivisions).
    /// Unimodularity is still asserted.
    pub(crate) fn trusted(ambient_dim: usize, rays: Vec<LatticeVector>, cones: Vec<Cone>) -> Fan {
        let cones = inclusion_maximal(rays.len(), cones.into_iter().collect());
        debug_assert!(check_rays(ambient_dim, &rays).is_ok());
        for c in &cones {
            if c.dim() > 0 {
                let vs = cone_vectors(&rays, c);
                assert_eq!(
                    crate::lattice::is_unimodular_set(&vs),
                    Ok(true),
                    "derived cone {c} must be unimodular"
                );
            }
        }
        Fan::assemble(ambient_dim, rays, cones, true)
    }

    fn assemble(ambient_dim: usize, rays: Vec<LatticeVector>, maximal: Vec<Cone>, unimodular: bool) -> Fan {
        let dim = maximal.iter().map(Cone::dim).max().unwrap_or(0);
        let mut cone_set: HashSet<Cone> = HashSet::new();
        for c in &maximal {
            let k = c.dim();
            for mask in 0u64..(1u64 << k) {
                let face: Vec<usize> =
                    (0..k).filter(|b| mask >> b & 1 == 1).map(|b| c.rays()[b]).collect();
                cone_set.insert(Cone(face));
            }
        }
        let mut cones_by_dim = vec![Vec::new(); dim + 1];
        for c in &cone_set {
            cones_by_dim[c.dim()].push(c.clone());
        }
        for level in &mut cones_by_dim {
            level.sort();
        }
        let key = FanKey::new(ambient_dim, &rays, &maximal);
        Fan {
            ambient_dim,
            rays,
            maximal_cones: maximal,
            cones_by_dim,
            cone_set,
            unimodular,
            key,
            stars: Mutex::new(HashMap::new()),
            bases: Mutex::new(HashMap::new()),
            linear: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal_cones
    }

    /// Dimension of the largest cone.
    pub fn dim(&self) -> usize {
        self.cones_by_dim.len() - 1
    }

    pub fn cones_of_dim(&self, k: usize) -> &[Cone] {
        self.cones_by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones_by_dim.iter().flatten()
    }

    pub fn num_cones(&self) -> usize {
        self.cone_set.len()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cone_set.contains(c)
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.maximal_cones.iter().all(|c| c.dim() == d)
    }

    pub fn key(&self) -> &FanKey {
        &self.key
    }

    pub fn cone_vectors(&self, c: &Cone) -> Vec<LatticeVector> {
        cone_vectors(&self.rays, c)
    }

    /// Lexicographically least cone of maximal dimension.
    pub fn least_top_cone(&self) -> &Cone {
        &self.cones_by_dim[self.dim()][0]
    }

    /// Maximal-dimensional cones containing `c`.
    pub fn top_cones_containing<'a>(&'a self, c: &'a Cone) -> impl Iterator<Item = &'a Cone> + 'a {
        self.cones_of_dim(self.dim()).iter().filter(move |s| c.is_face_of(s))
    }

    /// Cached deterministic basis completion of the rays of `c`.
    pub fn basis_for(&self, c: &Cone) -> Result<Arc<BasisCompletion>, FanError> {
        if !self.contains_cone(c) {
            return Err(FanError::ConeNotInFan(c.clone()));
        }
        if let Some(b) = self.bases.lock().unwrap().get(c) {
            return Ok(b.clone());
        }
        let basis = complete_to_unimodular_basis(self.ambient_dim, &self.cone_vectors(c))
            .map_err(|e| match e {
                LatticeError::NotUnimodular { diagonal } => {
                    FanError::NotUnimodular { cone: c.clone(), diagonal }
                }
                _ => FanError::NotSimplicial(c.clone()),
            })?;
        let basis = Arc::new(basis);
        self.bases.lock().unwrap().insert(c.clone(), basis.clone());
        Ok(basis)
    }

    /// Hermite basis of `L(Σ)`.
    pub fn linear_lattice(&self) -> &LinearLattice {
        self.linear.get_or_init(|| {
            // Row j lists the j-th coordinates of the rays; its row space is L(Σ).
            let a = IntMatrix::from_cols(self.ambient_dim, &self.rays);
            let (h, u) = hermite_normal_form(&a);
            let pivots = hnf_pivots(&h);
            LinearLattice {
                rows: pivots.iter().map(|&(r, _)| h.row(r)).collect(),
                pivots: pivots.iter().map(|&(_, c)| c).collect(),
                functionals: pivots.iter().map(|&(r, _)| u.row(r)).collect(),
            }
        })
    }

    /// The star fan at `sigma`. Requires a unimodular fan.
    pub fn star(self: &Arc<Self>, sigma: &Cone) -> Result<Arc<StarFan>, FanError> {
        if !self.contains_cone(sigma) {
            return Err(FanError::ConeNotInFan(sigma.clone()));
        }
        if !self.unimodular {
            return Err(FanError::NotUnimodularFan);
        }
        if let Some(s) = self.stars.lock().unwrap().get(sigma) {
            return Ok(s.clone());
        }
        let star = Arc::new(self.compute_star(sigma)?);
        self.stars.lock().unwrap().insert(sigma.clone(), star.clone());
        Ok(star)
    }

    fn compute_star(self: &Arc<Self>, sigma: &Cone) -> Result<StarFan, FanError> {
        let section_basis = self.basis_for(sigma)?;
        if sigma.dim() == 0 {
            return Ok(StarFan {
                fan: self.clone(),
                ray_lift: (0..self.num_rays()).collect(),
                projection: IntMatrix::identity(self.ambient_dim),
                section_basis,
            });
        }
        let projection = section_basis.dual.row_range(sigma.dim(), self.ambient_dim);
        let neighbors: Vec<usize> = (0..self.num_rays())
            .filter(|&r| !sigma.contains(r) && self.contains_cone(&sigma.with(r)))
            .collect();
        let index_of: HashMap<usize, usize> = neighbors.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let rays: Vec<LatticeVector> = neighbors.iter().map(|&r| projection.mul_vec(&self.rays[r])).collect();
        let cones: Vec<Cone> = self
            .maximal_cones
            .iter()
            .filter(|c| sigma.is_face_of(c))
            .map(|c| Cone::new(c.minus(sigma).iter().map(|r| index_of[r]).collect()))
            .collect();
        let fan = Fan::trusted(self.ambient_dim - sigma.dim(), rays, cones);
        Ok(StarFan { fan: Arc::new(fan), ray_lift: neighbors, projection, section_basis })
    }

    /// Whether `point` lies in some maximal cone (exact rational test).
    pub fn contains_point(&self, point: &LatticeVector) -> bool {
        self.maximal_cones.iter().any(|c| {
            let vs = self.cone_vectors(c);
            match rational_coordinates(&vs, point) {
                Some(coords) => {
                    coords.iter().all(|x| !x.is_negative()) && {
                        // The solver returns a solution; verify it reproduces the point.
                        let n = point.dim();
                        (0..n).all(|row| {
                            let lhs: BigRational = vs
                                .iter()
                                .zip(&coords)
                                .map(|(v, x)| BigRational::from_integer(v.0[row].clone()) * x)
                                .sum();
                            lhs == BigRational::from_integer(point.0[row].clone())
                        })
                    }
                }
                None => false,
            }
        })
    }

    /// Ridge pairing, dual-graph connectivity and probe-point coverage.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient_dim;
        if self.dim() != n || !self.is_pure() {
            return false;
        }
        if n == 0 {
            return true;
        }
        let tops = &self.maximal_cones;
        let mut ridge_owners: HashMap<Cone, Vec<usize>> = HashMap::new();
        for (i, c) in tops.iter().enumerate() {
            for &r in c.rays() {
                ridge_owners.entry(c.without(r)).or_default().push(i);
            }
        }
        if ridge_owners.values().any(|owners| owners.len() != 2) {
            return false;
        }
        let mut adj = vec![Vec::new(); tops.len()];
        for owners in ridge_owners.values() {
            adj[owners[0]].push(owners[1]);
            adj[owners[1]].push(owners[0]);
        }
        let mut seen = vec![false; tops.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        probe_points(n).iter().all(|p| self.contains_point(p))
    }

    /// Checks the balancing condition at every ridge; returns the first failure.
    pub fn balance_failure(&self) -> Result<Option<BalanceFailure>, FanError> {
        if !self.is_pure() {
            return Err(FanError::NotPure);
        }
        if !self.unimodular {
            return Err(FanError::NotUnimodularFan);
        }
        let d = self.dim();
        if d == 0 {
            return Ok(None);
        }
        for tau in self.cones_of_dim(d - 1) {
            let mut sum = LatticeVector::zeros(self.ambient_dim);
            for sigma in self.top_cones_containing(tau) {
                for r in sigma.minus(tau) {
                    sum = &sum + &self.rays[r];
                }
            }
            let proj = quotient_projection(self.ambient_dim, &self.cone_vectors(tau))
                .expect("cones of a unimodular fan are unimodular");
            let residual = proj.mul_vec(&sum);
            if !residual.is_zero() {
                return Ok(Some(BalanceFailure { ridge: tau.clone(), sum, residual }));
            }
        }
        Ok(None)
    }

    pub fn is_balanced(&self) -> Result<bool, FanError> {
        Ok(self.balance_failure()?.is_none())
    }

    /// Stellar subdivision at `tau`, adding the ray `Σ_{ρ∈τ} u_ρ` as the last ray.
    pub fn stellar_subdivision(self: &Arc<Self>, tau: &Cone) -> Result<Subdivision, FanError> {
        if !self.contains_cone(tau) {
            return Err(FanError::ConeNotInFan(tau.clone()));
        }
        if tau.dim() == 0 {
            return Err(FanError::OriginSubdivision);
        }
        if !self.unimodular {
            return Err(FanError::NotUnimodularFan);
        }
        if tau.dim() == 1 {
            return Ok(Subdivision { fan: self.clone(), coarse: self.clone(), tau: tau.clone(), new_ray: tau.rays()[0] });
        }
        let new_ray = self.num_rays();
        let u_tau = tau
            .rays()
            .iter()
            .fold(LatticeVector::zeros(self.ambient_dim), |acc, &r| &acc + &self.rays[r]);
        let mut rays = self.rays.clone();
        rays.push(u_tau);
        let mut cones = Vec::new();
        let mut subdivided = Vec::new();
        for c in &self.maximal_cones {
            if tau.is_face_of(c) {
                subdivided.push(c.clone());
                for &r in tau.rays() {
                    cones.push(c.without(r).with(new_ray));
                }
            } else {
                cones.push(c.clone());
            }
        }
        let fan = Arc::new(Fan::trusted(self.ambient_dim, rays, cones));
        let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
        for c in &subdivided {
            for _ in 0..4 {
                let p = c.rays().iter().fold(LatticeVector::zeros(self.ambient_dim), |acc, &r| {
                    &acc + &self.rays[r].scaled(&Int::from(rng.gen_range(1..=9)))
                });
                if !fan.contains_point(&p) {
                    return Err(FanError::SupportChanged(c.clone()));
                }
            }
        }
        Ok(Subdivision { fan, coarse: self.clone(), tau: tau.clone(), new_ray })
    }
}

fn probe_points(n: usize) -> Vec<LatticeVector> {
    let mut points = Vec::new();
    for i in 0..n {
        let e = LatticeVector::unit(n, i);
        points.push(-&e);
        points.push(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    for _ in 0..=n {
        points.push(LatticeVector((0..n).map(|_| Int::from(rng.gen_range(-97i64..=97))).collect()));
    }
    points
}

/// Shorthand for [`Fan::build`] returning an `Arc`.
pub fn build_fan(
    ambient_dim: usize,
    rays: Vec<LatticeVector>,
    maximal_cones: &[Vec<usize>],
    require_unimodular: bool,
) -> Result<Arc<Fan>, FanError> {
    Fan::build(ambient_dim, rays, maximal_cones, require_unimodular).map(Arc::new)
}

/// `Σ1 × Σ2` in `Z^{n1+n2}`: rays of `Σ1` come first.
pub fn product_fan(a: &Fan, b: &Fan) -> Result<Arc<Fan>, FanError> {
    if !a.is_unimodular() || !b.is_unimodular() {
        return Err(FanError::NotUnimodularFan);
    }
    let za = LatticeVector::zeros(a.ambient_dim());
    let zb = LatticeVector::zeros(b.ambient_dim());
    let mut rays: Vec<LatticeVector> = a.rays().iter().map(|r| r.concat(&zb)).collect();
    rays.extend(b.rays().iter().map(|r| za.concat(r)));
    let shift = a.num_rays();
    let mut cones = Vec::new();
    for ca in a.maximal_cones() {
        for cb in b.maximal_cones() {
            let mut v = ca.rays().to_vec();
            v.extend(cb.rays().iter().map(|r| r + shift));
            cones.push(Cone::new(v));
        }
    }
    Ok(Arc::new(Fan::trusted(a.ambient_dim() + b.ambient_dim(), rays, cones)))
}

/// Normal fan of the standard `k`-simplex.
pub fn projective_fan(k: usize) -> Arc<Fan> {
    let mut rays: Vec<LatticeVector> = (0..k).map(|i| LatticeVector::unit(k, i)).collect();
    if k > 0 {
        rays.push(LatticeVector(vec![Int::from(-1); k]));
    }
    let cones: Vec<Cone> = if k == 0 {
        vec![Cone::origin()]
    } else {
        (0..=k).map(|skip| Cone::new((0..=k).filter(|&r| r != skip).collect())).collect()
    };
    Arc::new(Fan::trusted(k, rays, cones))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn f1() -> Arc<Fan> {
        build_fan(
            2,
            vec![v(&[1, 0]), v(&[1, 1]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
            true,
        )
        .unwrap()
    }

    fn square() -> Arc<Fan> {
        build_fan(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            true,
        )
        .unwrap()
    }

    #[test]
    fn f1_is_valid() {
        let fan = f1();
        assert!(fan.is_unimodular());
        assert_eq!(fan.num_cones(), 11);
        assert_eq!(fan.dim(), 2);
        assert!(fan.is_complete());
        assert_eq!(fan.is_balanced(), Ok(true));
    }

    #[test]
    fn overlapping_cones_rejected() {
        let err = Fan::build(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])], &[vec![0, 1], vec![2, 0]], true)
            .unwrap_err();
        assert!(matches!(err, FanError::BadIntersection(..)));
    }

    #[test]
    fn single_ray() {
        let fan = build_fan(2, vec![v(&[1, 0])], &[vec![0]], true).unwrap();
        assert_eq!(fan.num_cones(), 2);
        assert!(!fan.is_complete());
    }

    #[test]
    fn ray_errors() {
        assert!(matches!(
            Fan::build(2, vec![v(&[2, 2])], &[vec![0]], true),
            Err(FanError::NonPrimitiveRay { index: 0, .. })
        ));
        assert_eq!(
            Fan::build(2, vec![v(&[1, 0]), v(&[1, 0])], &[vec![0], vec![1]], true).unwrap_err(),
            FanError::DuplicateRay(0, 1)
        );
        assert!(matches!(
            Fan::build(2, vec![v(&[1, 0]), v(&[1, 2])], &[vec![0, 1]], true),
            Err(FanError::NotUnimodular { .. })
        ));
        let lax = Fan::build(2, vec![v(&[1, 0]), v(&[1, 2])], &[vec![0, 1]], false).unwrap();
        assert!(!lax.is_unimodular());
    }

    #[test]
    fn stars() {
        let fan = f1();
        let s = fan.star(&Cone::ray(1)).unwrap();
        assert_eq!(s.fan.ambient_dim(), 1);
        assert_eq!(s.ray_lift, vec![0, 2]);
        assert_eq!(s.fan.rays(), &[v(&[-1]), v(&[1])]);
        let origin = fan.star(&Cone::origin()).unwrap();
        assert_eq!(*origin.fan, *fan);
        let top = fan.star(&Cone::new(vec![0, 1])).unwrap();
        assert_eq!(top.fan.ambient_dim(), 0);
        assert_eq!(top.fan.num_cones(), 1);
        assert!(fan.star(&Cone::new(vec![0, 2])).is_err());
    }

    #[test]
    fn completeness() {
        assert!(square().is_complete());
        let u23 = build_fan(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])], &[vec![0], vec![1], vec![2]], true)
            .unwrap();
        assert!(!u23.is_complete());
        let half = build_fan(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0])], &[vec![0, 1], vec![1, 2]], true)
            .unwrap();
        assert!(!half.is_complete());
    }

    #[test]
    fn balancing() {
        let bad = build_fan(2, vec![v(&[1, 0]), v(&[1, 2])], &[vec![0], vec![1]], true).unwrap();
        let failure = bad.balance_failure().unwrap().unwrap();
        assert_eq!(failure.ridge, Cone::origin());
        assert_eq!(failure.residual, v(&[2, 2]));
        let nonpure = build_fan(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])], &[vec![0, 1], vec![2]], true)
            .unwrap();
        assert_eq!(nonpure.is_balanced(), Err(FanError::NotPure));
    }

    #[test]
    fn subdivisions() {
        let sq = square();
        let sub = sq.stellar_subdivision(&Cone::new(vec![0, 1])).unwrap();
        assert_eq!(sub.new_ray, 4);
        assert_eq!(sub.fan.ray(4), &v(&[1, 1]));
        assert_eq!(sub.fan.maximal_cones().len(), 5);
        assert!(sub.fan.is_complete());

        let at_ray = sq.stellar_subdivision(&Cone::ray(2)).unwrap();
        assert_eq!(at_ray.new_ray, 2);
        assert_eq!(*at_ray.fan, *sq);

        let fan = f1();
        let again = fan.stellar_subdivision(&Cone::new(vec![1, 2])).unwrap();
        assert_eq!(again.fan.ray(5), &v(&[1, 2]));
        assert_eq!(again.fan.maximal_cones().len(), 6);
    }

    #[test]
    fn products_and_projective() {
        let p1 = projective_fan(1);
        assert_eq!(p1.rays(), &[v(&[1]), v(&[-1])]);
        let sq = product_fan(&p1, &p1).unwrap();
        assert_eq!(sq.num_rays(), 4);
        assert_eq!(sq.maximal_cones().len(), 4);
        assert!(sq.is_complete());
        assert_eq!(sq.num_cones(), p1.num_cones() * p1.num_cones());

        let p0 = projective_fan(0);
        assert_eq!(p0.num_cones(), 1);
        let same = product_fan(&f1(), &p0).unwrap();
        assert_eq!(*same, *f1());

        let big = product_fan(&f1(), &p1).unwrap();
        assert_eq!(big.maximal_cones().len(), 10);
        assert!(big.is_pure());
        assert_eq!(big.dim(), 3);

        let p2 = projective_fan(2);
        assert_eq!(p2.rays(), &[v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])]);
        assert_eq!(p2.maximal_cones().len(), 3);
        assert!(p2.is_complete());
    }
}
