//! Finite groups as dense Cayley tables.
//!
//! Elements are the integers `0..n`; labels are cosmetic. Every constructor
//! documents its element indexing:
//!
//! * `cyclic(m)`: `k` is the residue `k mod m`.
//! * `dihedral(n)`: `k < n` is the rotation `r^k`, `n + k` is the reflection `r^k s`.
//! * `quaternion()`: `1, -1, i, -i, j, -j, k, -k` in that order.
//! * `symmetric(n)`: permutations of `0..n` in lexicographic order of their
//!   one-line notation, composed as `(στ)(i) = σ(τ(i))`.
//! * `product(a, b)`: the pair `(x, y)` sits at `x * |b| + y`.
//!
//! On a discrete group every subset containing the identity is an open
//! neighbourhood of it, so "open" carries no extra condition anywhere here.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Orders above this are accepted without the cubic associativity check.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

/// Recipe for building a [`FiniteGroup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion,
    Symmetric(usize),
    Product(Box<GroupDescriptor>, Box<GroupDescriptor>),
    Table(Vec<Vec<usize>>),
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupDescriptor::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupDescriptor::Quaternion => write!(f, "quaternion:8"),
            GroupDescriptor::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupDescriptor::Product(a, b) => write!(f, "product({a},{b})"),
            GroupDescriptor::Table(t) => write!(f, "table[{}]", t.len()),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// Parses `cyclic:m`, `dihedral:n`, `quaternion[:8]`, `symmetric:n` and
    /// `product(A,B)` with arbitrary nesting.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let split = top_level_comma(inner)
                .ok_or_else(|| Error::Parse(format!("product needs two factors: '{s}'")))?;
            let (a, b) = (&inner[..split], &inner[split + 1..]);
            return Ok(GroupDescriptor::Product(
                Box::new(a.parse()?),
                Box::new(b.parse()?),
            ));
        }
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s, None),
        };
        let number = |what: &str| -> Result<usize> {
            arg.ok_or_else(|| Error::Parse(format!("{what} needs a size, e.g. '{what}:4'")))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad size in '{s}': {e}")))
        };
        match name {
            "cyclic" | "Z" => Ok(GroupDescriptor::Cyclic(number("cyclic")?)),
            "dihedral" | "D" => Ok(GroupDescriptor::Dihedral(number("dihedral")?)),
            "symmetric" | "S" => Ok(GroupDescriptor::Symmetric(number("symmetric")?)),
            "quaternion" | "Q" => match arg {
                None | Some("8") => Ok(GroupDescriptor::Quaternion),
                Some(other) => Err(Error::Parse(format!(
                    "only the order-8 quaternion group is supported, got '{other}'"
                ))),
            },
            _ => Err(Error::Parse(format!("unknown group descriptor '{s}'"))),
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    trusted: bool,
}

impl FiniteGroup {
    pub fn make(desc: &GroupDescriptor) -> Result<Self> {
        match desc {
            GroupDescriptor::Cyclic(m) => Self::cyclic(*m),
            GroupDescriptor::Dihedral(n) => Self::dihedral(*n),
            GroupDescriptor::Quaternion => Ok(Self::quaternion()),
            GroupDescriptor::Symmetric(n) => Self::symmetric(*n),
            GroupDescriptor::Product(a, b) => Ok(Self::product(&Self::make(a)?, &Self::make(b)?)),
            GroupDescriptor::Table(t) => Self::from_table(t.clone(), None),
        }
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("cyclic group needs m >= 1".into()));
        }
        let cayley = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i + j) % m))
            .collect();
        let labels = (0..m).map(|k| k.to_string()).collect();
        Ok(Self::from_trusted_parts(m, cayley, labels))
    }

    /// The dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
        }
        let order = 2 * n;
        let mut cayley = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let (a, xs) = (x % n, x >= n);
                let (b, ys) = (y % n, y >= n);
                let rot = if xs { (a + n - b) % n } else { (a + b) % n };
                let refl = xs ^ ys;
                cayley[x * order + y] = rot + if refl { n } else { 0 };
            }
        }
        let labels = (0..order)
            .map(|x| match (x % n, x >= n) {
                (0, false) => "e".to_string(),
                (0, true) => "s".to_string(),
                (k, false) => format!("r^{k}"),
                (k, true) => format!("r^{k}s"),
            })
            .collect();
        Ok(Self::from_trusted_parts(order, cayley, labels))
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // unit products over {1, i, j, k}: (negated, unit)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let mut cayley = vec![0; 64];
        for x in 0..8 {
            for y in 0..8 {
                let (neg, u) = UNIT[x / 2][y / 2];
                let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                cayley[x * 8 + y] = 2 * u + usize::from(sign);
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_trusted_parts(8, cayley, labels)
    }

    /// The symmetric group on `n <= 6` letters.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidGroup(format!(
                "symmetric group supported for 1 <= n <= 6, got {n}"
            )));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let order = perms.len();
        let index_of = |q: &[usize]| -> usize {
            perms
                .binary_search_by(|probe| probe.as_slice().cmp(q))
                .expect("permutation")
        };
        let mut cayley = vec![0; order * order];
        let mut buf = vec![0; n];
        for (x, sigma) in perms.iter().enumerate() {
            for (y, tau) in perms.iter().enumerate() {
                for i in 0..n {
                    buf[i] = sigma[tau[i]];
                }
                cayley[x * order + y] = index_of(&buf);
            }
        }
        let labels = perms
            .iter()
            .map(|q| {
                let body: Vec<String> = q.iter().map(|v| v.to_string()).collect();
                format!("[{}]", body.join(" "))
            })
            .collect();
        Ok(Self::from_trusted_parts(order, cayley, labels))
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut cayley = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                cayley[x * order + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        Self::from_trusted_parts(order, cayley, labels)
    }

    /// Validates an explicit table. `table[i][j]` is the index of `x_i x_j`.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut cayley = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGroup(format!(
                    "closure: entry {bad} in row {i} is not an element index"
                )));
            }
            cayley.extend_from_slice(row);
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: l.len(),
                })
            }
            None => (0..n).map(|k| k.to_string()).collect(),
        };
        let mut seen = vec![false; n];
        for i in 0..n {
            for (axis, pick) in [("row", true), ("column", false)] {
                seen.iter_mut().for_each(|s| *s = false);
                for j in 0..n {
                    let v = if pick {
                        cayley[i * n + j]
                    } else {
                        cayley[j * n + i]
                    };
                    if std::mem::replace(&mut seen[v], true) {
                        return Err(Error::InvalidGroup(format!(
                            "latin square: {axis} {i} repeats element {v}"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| cayley[e * n + j] == j && cayley[j * n + e] == j))
            .ok_or_else(|| Error::InvalidGroup("identity: no two-sided identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for j in 0..n {
            let k = (0..n)
                .find(|&k| cayley[j * n + k] == identity && cayley[k * n + j] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("inverse: element {j} has none")))?;
            inverse[j] = k;
        }
        let trusted = n > ASSOCIATIVITY_CHECK_LIMIT;
        if !trusted {
            for i in 0..n {
                for j in 0..n {
                    let ij = cayley[i * n + j];
                    for k in 0..n {
                        if cayley[ij * n + k] != cayley[i * n + cayley[j * n + k]] {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails for ({i}, {j}, {k})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self {
            order: n,
            cayley,
            identity,
            inverse,
            labels,
            trusted,
        })
    }

    /// Parses `n` lines of `n` comma-separated 0-based indices.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut table = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|e| {
                        Error::Parse(format!(
                            "line {}: bad index '{}': {e}",
                            lineno + 1,
                            t.trim()
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let group = Self::from_table(table, None)?;
        if group.identity != 0 {
            return Err(Error::InvalidGroup(format!(
                "identity: CSV tables must list the identity first, found it at {}",
                group.identity
            )));
        }
        Ok(group)
    }

    // Built-in constructors produce valid tables; only the identity and
    // inverses are derived.
    fn from_trusted_parts(order: usize, cayley: Vec<usize>, labels: Vec<String>) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|j| cayley[e * order + j] == j))
            .expect("constructor table has an identity");
        let inverse = (0..order)
            .map(|j| {
                (0..order)
                    .find(|&k| cayley[j * order + k] == identity)
                    .expect("constructor table has inverses")
            })
            .collect();
        Self {
            order,
            cayley,
            identity,
            inverse,
            labels,
            trusted: order > ASSOCIATIVITY_CHECK_LIMIT,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// True when associativity was not verified (order above the check limit).
    pub fn is_trusted(&self) -> bool {
        self.trusted
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Row-major copy of the multiplication table.
    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.cayley.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    /// `z^k` for any integer `k`.
    pub fn pow(&self, z: usize, k: i64) -> usize {
        let m = self.element_order(z) as i64;
        let mut e = k.rem_euclid(m);
        let mut acc = self.identity;
        let mut base = z;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `z x z^{-1}`.
    pub fn conjugate(&self, z: usize, x: usize) -> usize {
        self.mul(self.mul(z, x), self.inv(z))
    }

    /// Smallest `m >= 1` with `z^m = e`.
    pub fn element_order(&self, z: usize) -> usize {
        let mut m = 1;
        let mut p = z;
        while p != self.identity {
            p = self.mul(p, z);
            m += 1;
        }
        m
    }

    /// `[z^0, z^1, ..., z^{m-1}]`.
    pub fn generated_subgroup(&self, z: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut p = z;
        while p != self.identity {
            out.push(p);
            p = self.mul(p, z);
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Checks that `elements` is closed under products and inverses.
    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        if elements.is_empty() || elements.iter().any(|&x| x >= self.order) {
            return false;
        }
        let mut mask = vec![false; self.order];
        for &x in elements {
            mask[x] = true;
        }
        mask[self.identity]
            && elements.iter().all(|&x| mask[self.inv(x)])
            && elements
                .iter()
                .all(|&x| elements.iter().all(|&y| mask[self.mul(x, y)]))
    }

    /// Every element of a discrete group is round: `V = {e}` is a
    /// conjugation-invariant neighbourhood inside any neighbourhood of `e`.
    /// [`conj_invariant_core`] gives the largest such `V` inside a given set.
    pub fn is_round(&self, z: usize) -> bool {
        z < self.order
    }

    /// The modular function is identically 1 on a finite group.
    pub fn modular_function(&self, _x: usize) -> f64 {
        1.0
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A subset of a finite group as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SubsetMask {
    members: Vec<bool>,
}

impl SubsetMask {
    pub fn empty(group_order: usize) -> Self {
        Self {
            members: vec![false; group_order],
        }
    }

    pub fn full(group_order: usize) -> Self {
        Self {
            members: vec![true; group_order],
        }
    }

    pub fn from_indices(group_order: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = Self::empty(group_order);
        for &i in indices {
            if i >= group_order {
                return Err(Error::ElementOutOfRange {
                    index: i,
                    order: group_order,
                });
            }
            mask.members[i] = true;
        }
        Ok(mask)
    }

    pub fn from_members(members: Vec<bool>) -> Self {
        Self { members }
    }

    pub fn group_order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.get(x).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, x: usize) {
        self.members[x] = true;
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn is_symmetric(&self, g: &FiniteGroup) -> bool {
        (0..self.members.len()).all(|x| self.members[x] == self.members[g.inv(x)])
    }
}

/// Output of [`symmetrize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrized {
    pub mask: SubsetMask,
    pub was_symmetric: bool,
}

/// `S ∩ S^{-1}`; errors when the identity is missing since then no
/// normalized function can live in `S`.
pub fn symmetrize(g: &FiniteGroup, s: &SubsetMask) -> Result<Symmetrized> {
    if s.group_order() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            got: s.group_order(),
        });
    }
    if !s.contains(g.identity()) {
        return Err(Error::IdentityMissing);
    }
    let members: Vec<bool> = (0..g.order())
        .map(|x| s.contains(x) && s.contains(g.inv(x)))
        .collect();
    let was_symmetric = members == s.members;
    Ok(Symmetrized {
        mask: SubsetMask { members },
        was_symmetric,
    })
}

/// Symmetric subset of `Z_m` containing 0: the residues `k` with `z^k ∈ Ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct CyclicTrace {
    m: usize,
    members: Vec<bool>,
}

impl CyclicTrace {
    /// Builds a trace from residues, closing under negation is NOT done here:
    /// a non-symmetric set or a set missing 0 is rejected.
    pub fn new(m: usize, residues: &[i64]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let mut members = vec![false; m];
        for &k in residues {
            members[k.rem_euclid(m as i64) as usize] = true;
        }
        Self::from_members(members)
    }

    pub fn from_members(members: Vec<bool>) -> Result<Self> {
        let m = members.len();
        if m == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if !members[0] {
            return Err(Error::IdentityMissing);
        }
        if (1..m).any(|k| members[k] != members[m - k]) {
            return Err(Error::InvalidArgument("trace set is not symmetric".into()));
        }
        Ok(Self { m, members })
    }

    pub fn full(m: usize) -> Self {
        Self {
            m,
            members: vec![true; m],
        }
    }

    /// `{-n, ..., n} mod m`.
    pub fn window(m: usize, n: usize) -> Self {
        let mut members = vec![false; m];
        for k in 0..=n.min(m) {
            members[k % m] = true;
            members[(m - k % m) % m] = true;
        }
        Self { m, members }
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn contains(&self, k: i64) -> bool {
        self.members[k.rem_euclid(self.m as i64) as usize]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn residues(&self) -> Vec<usize> {
        (0..self.m).filter(|&k| self.members[k]).collect()
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&b| b)
    }

    pub fn is_subset_of(&self, other: &CyclicTrace) -> bool {
        self.m == other.m
            && self
                .members
                .iter()
                .zip(&other.members)
                .all(|(&a, &b)| !a || b)
    }

    pub fn is_symmetric(&self) -> bool {
        (1..self.m).all(|k| self.members[k] == self.members[self.m - k])
    }

    /// Every symmetric subset of `Z_m` containing 0, in a fixed order.
    pub fn all_symmetric(m: usize) -> Vec<CyclicTrace> {
        let half = m / 2;
        (0u64..(1u64 << half))
            .map(|bits| {
                let mut members = vec![false; m];
                members[0] = true;
                for n in 1..=half {
                    if bits >> (n - 1) & 1 == 1 {
                        members[n] = true;
                        members[m - n] = true;
                    }
                }
                CyclicTrace { m, members }
            })
            .collect()
    }
}

impl fmt::Display for CyclicTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.residues().iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}} ⊂ Z_{}", body.join(","), self.m)
    }
}

/// `H_m(Ω, z) = {k ∈ Z_m : z^k ∈ Ω}` with `m = o(z)`.
pub fn support_trace(g: &FiniteGroup, omega: &SubsetMask, z: usize) -> Result<CyclicTrace> {
    g.check_element(z)?;
    let powers = g.generated_subgroup(z);
    let members = powers.iter().map(|&p| omega.contains(p)).collect();
    CyclicTrace::from_members(members)
}

/// Returns `N` when `⟨z⟩ ∩ Ω = {z^n : |n| <= N}`.
pub fn check_cf_condition(g: &FiniteGroup, omega: &SubsetMask, z: usize) -> Result<Option<usize>> {
    let trace = support_trace(g, omega, z)?;
    Ok(window_radius(&trace))
}

/// Radius `N` of the trace when it is exactly a window `{-N..N} mod m`.
pub fn window_radius(trace: &CyclicTrace) -> Option<usize> {
    let m = trace.modulus();
    let half = m / 2;
    let mut n = 0;
    while n < half && trace.contains(n as i64 + 1) {
        n += 1;
    }
    (CyclicTrace::window(m, n) == *trace).then_some(n)
}

/// `V = ∩_{j<m} z^j U z^{-j}`, the largest subset of `U` invariant under
/// conjugation by `z`.
pub fn conj_invariant_core(g: &FiniteGroup, u: &SubsetMask, z: usize) -> Result<SubsetMask> {
    g.check_element(z)?;
    if !u.contains(g.identity()) {
        return Err(Error::IdentityMissing);
    }
    let m = g.element_order(z) as i64;
    // x ∈ z^j U z^{-j}  <=>  z^{-j} x z^j ∈ U
    let members = (0..g.order())
        .map(|x| (0..m).all(|j| u.contains(g.conjugate(g.pow(z, -j), x))))
        .collect();
    Ok(SubsetMask { members })
}

/// Parses an Ω description relative to the point `z`, then replaces it by
/// `Ω ∩ Ω^{-1}`.
///
/// Parts joined by `+` are united: `all`, `subgroup` (`⟨z⟩`), `window:N`
/// (`{z^n : |n| <= N}`) or a comma-separated list of element indices.
pub fn parse_omega(g: &FiniteGroup, spec: &str, z: usize) -> Result<Symmetrized> {
    g.check_element(z)?;
    let mut mask = SubsetMask::empty(g.order());
    for part in spec.split('+').map(str::trim) {
        if part.is_empty() {
            return Err(Error::Parse(format!("empty part in Ω spec '{spec}'")));
        }
        if part == "all" {
            mask = SubsetMask::full(g.order());
        } else if part == "subgroup" {
            for x in g.generated_subgroup(z) {
                mask.insert(x);
            }
        } else if let Some(n) = part.strip_prefix("window:") {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad window radius in '{part}': {e}")))?;
            if n < 0 {
                return Err(Error::Parse(format!("negative window radius in '{part}'")));
            }
            for k in -n..=n {
                mask.insert(g.pow(z, k));
            }
        } else {
            for item in part.split(',').map(str::trim) {
                let x: usize = item.parse().map_err(|e| {
                    Error::Parse(format!("bad element index '{item}' in Ω spec: {e}"))
                })?;
                g.check_element(x)?;
                mask.insert(x);
            }
        }
    }
    symmetrize(g, &mask)
}
