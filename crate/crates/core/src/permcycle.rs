//! Dense maps on `F_{q^2}` and their cycle structure.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Level};
use crate::linmap::Mat2;

/// A total map `F_{q^2} → F_{q^2}` as a table over canonical indices.
/// Being a permutation is a checked property, not an invariant.
#[derive(Clone, Debug)]
pub struct PermMap {
    ctx: Arc<FieldCtx>,
    table: Vec<u32>,
}

impl PartialEq for PermMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && *self.ctx == *other.ctx
    }
}

impl Eq for PermMap {}

impl PermMap {
    pub fn from_table(ctx: Arc<FieldCtx>, table: Vec<u32>) -> Result<Self> {
        let n = ctx.q2() as usize;
        if table.len() != n {
            return Err(Error::TableLength { expected: n, found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= n) {
            return Err(Error::InvalidElement { level: Level::Fq2, index: bad as u64 });
        }
        Ok(PermMap { ctx, table })
    }

    /// Tabulates `(x1, x2) ↦ f(x1, x2)` with coordinates as `F_q` indices.
    pub fn from_fn(ctx: Arc<FieldCtx>, f: impl Fn(u32, u32) -> (u32, u32)) -> Self {
        let q = ctx.q();
        let mut table = Vec::with_capacity(ctx.q2() as usize);
        for x2 in 0..q {
            for x1 in 0..q {
                let (y1, y2) = f(x1, x2);
                debug_assert!(y1 < q && y2 < q);
                table.push(y1 + q * y2);
            }
        }
        PermMap { ctx, table }
    }

    /// Uniformly random permutation; same shuffle as
    /// [`CoordPerm::random`](crate::construct::CoordPerm::random).
    pub fn random(ctx: Arc<FieldCtx>, seed: u64) -> Self {
        let table = crate::construct::seeded_shuffle(ctx.q2(), seed);
        PermMap { ctx, table }
    }

    pub fn identity(ctx: Arc<FieldCtx>) -> Self {
        let table = (0..ctx.q2()).collect();
        PermMap { ctx, table }
    }

    /// `σ_M`.
    pub fn from_matrix(ctx: Arc<FieldCtx>, m: &Mat2) -> Self {
        let c = ctx.clone();
        Self::from_fn(ctx, |x1, x2| m.apply(&c, (x1, x2)))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u32> {
        self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// Applies the map to a coordinate pair.
    pub fn apply_pair(&self, x1: u32, x2: u32) -> (u32, u32) {
        let q = self.ctx.q();
        let y = self.table[(x1 + q * x2) as usize];
        (y % q, y / q)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        for &y in &self.table {
            if std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        true
    }

    fn require_permutation(&self) -> Result<()> {
        if !self.is_permutation() {
            return Err(Error::NotAPermutation);
        }
        Ok(())
    }

    /// `x ↦ f(x) + x`.
    pub fn plus_identity(&self) -> PermMap {
        let table = self.table.iter().enumerate().map(|(x, &y)| self.ctx.fq2_add(x as u32, y)).collect();
        PermMap { ctx: self.ctx.clone(), table }
    }

    /// Both `f` and `f + e` are permutations.
    pub fn is_cpp(&self) -> bool {
        self.is_permutation() && self.plus_identity().is_permutation()
    }

    /// Whether `f(x + y) = f(x) + f(y)` for all `x, y`. Checked by comparing
    /// `f` with the additive extension of its values on the `F_p` basis.
    pub fn is_additive(&self) -> bool {
        let ctx = &self.ctx;
        let p = ctx.p();
        let dims = ctx.degree(Level::Fq2);
        let mut basis = Vec::with_capacity(dims);
        let mut e = 1u32;
        for _ in 0..dims {
            basis.push(self.table[e as usize]);
            e *= p;
        }
        if self.table[0] != 0 {
            return false;
        }
        // multiples[i][c] = c·f(e_i)
        let multiples: Vec<Vec<u32>> = basis
            .iter()
            .map(|&b| {
                let mut row = vec![0u32; p as usize];
                for c in 1..p as usize {
                    row[c] = ctx.fq2_add(row[c - 1], b);
                }
                row
            })
            .collect();
        (0..self.table.len() as u32).all(|x| {
            let mut acc = 0;
            let mut rest = x;
            for row in &multiples {
                acc = ctx.fq2_add(acc, row[(rest % p) as usize]);
                rest /= p;
            }
            acc == self.table[x as usize]
        })
    }

    fn same_ctx(&self, other: &PermMap) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) && *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &PermMap) -> Result<PermMap> {
        self.same_ctx(other)?;
        let table = other.table.iter().map(|&y| self.table[y as usize]).collect();
        Ok(PermMap { ctx: self.ctx.clone(), table })
    }

    pub fn invert(&self) -> Result<PermMap> {
        self.require_permutation()?;
        let mut table = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y as usize] = x as u32;
        }
        Ok(PermMap { ctx: self.ctx.clone(), table })
    }

    /// `f^{(n)}` by repeated squaring.
    pub fn power(&self, mut n: u64) -> PermMap {
        let mut base = self.clone();
        let mut acc = PermMap::identity(self.ctx.clone());
        while n > 0 {
            if n & 1 == 1 {
                acc = base.compose(&acc).expect("same context");
            }
            base = base.compose(&base).expect("same context");
            n >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    pub fn cycle_structure(&self) -> Result<CycleStructure> {
        self.walk_cycles(false)
    }

    /// Like [`cycle_structure`](Self::cycle_structure), also recording every
    /// cycle of length at least 2 as a list of indices starting at its
    /// smallest element.
    pub fn cycle_structure_with_cycles(&self) -> Result<CycleStructure> {
        self.walk_cycles(true)
    }

    fn walk_cycles(&self, keep: bool) -> Result<CycleStructure> {
        self.require_permutation()?;
        let n = self.table.len();
        let mut visited = vec![false; n];
        let mut fixed_points = 0;
        let mut lengths = BTreeMap::new();
        let mut cycles = keep.then(Vec::new);
        let mut covered = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            let mut members = Vec::new();
            while !visited[cur] {
                visited[cur] = true;
                if keep {
                    members.push(cur as u32);
                }
                cur = self.table[cur] as usize;
                len += 1;
            }
            covered += len;
            if len == 1 {
                fixed_points += 1;
            } else {
                *lengths.entry(len).or_insert(0) += 1;
                if let Some(c) = cycles.as_mut() {
                    c.push(members);
                }
            }
        }
        assert_eq!(covered, n, "orbit walk must cover every point");
        Ok(CycleStructure { fixed_points, lengths, cycles })
    }

    /// Every non-fixed cycle has length exactly `r`. The identity counts as
    /// `r`-regular for every `r`, since it has no non-fixed cycles.
    pub fn is_r_regular(&self, r: usize) -> Result<bool> {
        Ok(self.cycle_structure()?.is_regular(r))
    }

    /// `f^{(n)} = e`.
    pub fn is_n_cycle_permutation(&self, n: u64) -> Result<bool> {
        self.require_permutation()?;
        Ok(self.power(n).is_identity())
    }
}

/// Fixed-point count plus the multiset of lengths of the other cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStructure {
    pub fixed_points: usize,
    /// cycle length → number of cycles of that length (lengths ≥ 2)
    pub lengths: BTreeMap<usize, usize>,
    pub cycles: Option<Vec<Vec<u32>>>,
}

impl CycleStructure {
    pub fn total_points(&self) -> usize {
        self.fixed_points + self.lengths.iter().map(|(l, c)| l * c).sum::<usize>()
    }

    pub fn is_regular(&self, r: usize) -> bool {
        self.lengths.keys().all(|&l| l == r)
    }

    /// Same fixed points and cycle multiset; the explicit listing is ignored.
    pub fn same_shape(&self, other: &CycleStructure) -> bool {
        self.fixed_points == other.fixed_points && self.lengths == other.lengths
    }
}
