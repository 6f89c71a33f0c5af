//! Exact linear algebra over finite abelian groups ⊕ Z/mᵢ.
//!
//! Elements are coordinate vectors reduced mod the per-slot moduli. Subgroups
//! are kept in Howell normal form over the common modulus N = lcm(mᵢ), which
//! gives canonical bases, membership tests and exact enumeration. Quotients
//! are built through an integer Smith normal form with tracked transforms.

pub type Coord = u8;

/// A finite abelian group ⊕ᵢ Z/mᵢ with coordinatewise arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZModule {
    moduli: Vec<Coord>,
}

impl ZModule {
    pub fn new(moduli: Vec<Coord>) -> Self {
        assert!(moduli.iter().all(|&m| m >= 1), "moduli must be positive");
        ZModule { moduli }
    }

    pub fn zero_module() -> Self {
        ZModule { moduli: Vec::new() }
    }

    pub fn moduli(&self) -> &[Coord] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn zero(&self) -> Vec<Coord> {
        vec![0; self.moduli.len()]
    }

    pub fn is_zero(&self, a: &[Coord]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn reduce(&self, a: &[i64]) -> Vec<Coord> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (x.rem_euclid(m as i64)) as Coord)
            .collect()
    }

    pub fn add(&self, a: &[Coord], b: &[Coord]) -> Vec<Coord> {
        debug_assert_eq!(a.len(), self.moduli.len());
        debug_assert_eq!(b.len(), self.moduli.len());
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| ((x as u16 + y as u16) % m as u16) as Coord)
            .collect()
    }

    pub fn add_assign(&self, a: &mut [Coord], b: &[Coord]) {
        for ((x, &y), &m) in a.iter_mut().zip(b).zip(&self.moduli) {
            *x = ((*x as u16 + y as u16) % m as u16) as Coord;
        }
    }

    pub fn neg(&self, a: &[Coord]) -> Vec<Coord> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
            .collect()
    }

    pub fn sub(&self, a: &[Coord], b: &[Coord]) -> Vec<Coord> {
        self.add(a, &self.neg(b))
    }

    pub fn smul(&self, k: i64, a: &[Coord]) -> Vec<Coord> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| ((k * x as i64).rem_euclid(m as i64)) as Coord)
            .collect()
    }

    /// Order of the whole group.
    pub fn size(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    /// Mixed-radix enumeration of all elements, lexicographic.
    pub fn iter_all(&self) -> ZModIter {
        ZModIter {
            moduli: self.moduli.clone(),
            cur: Some(vec![0; self.moduli.len()]),
        }
    }

    /// Direct sum, with `self` slots first.
    pub fn concat(&self, other: &ZModule) -> ZModule {
        let mut m = self.moduli.clone();
        m.extend_from_slice(&other.moduli);
        ZModule::new(m)
    }

    /// Additive order of an element.
    pub fn order_of(&self, a: &[Coord]) -> u64 {
        let mut o = 1u64;
        for (&x, &m) in a.iter().zip(&self.moduli) {
            if x != 0 {
                let g = gcd(x as u64, m as u64);
                o = lcm(o, m as u64 / g);
            }
        }
        o
    }

    fn common_modulus(&self) -> u64 {
        self.moduli.iter().fold(1u64, |n, &m| lcm(n, m as u64))
    }
}

pub struct ZModIter {
    moduli: Vec<Coord>,
    cur: Option<Vec<Coord>>,
}

impl Iterator for ZModIter {
    type Item = Vec<Coord>;
    fn next(&mut self) -> Option<Vec<Coord>> {
        let cur = self.cur.take()?;
        let mut next = cur.clone();
        let mut i = 0;
        loop {
            if i == self.moduli.len() {
                self.cur = None;
                break;
            }
            next[i] += 1;
            if next[i] < self.moduli[i] {
                self.cur = Some(next);
                break;
            }
            next[i] = 0;
            i += 1;
        }
        Some(cur)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 { (-a, -1, 0) } else { (a, 1, 0) }
    } else {
        let (g, s, t) = xgcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// A subgroup of a `ZModule`, stored as a Howell basis over N = lcm(mᵢ)
/// in scaled coordinates (slot i scaled by N/mᵢ).
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: ZModule,
    n: u64,
    scale: Vec<u64>,
    /// Howell rows in scaled coordinates; pivot columns strictly increase.
    rows: Vec<Vec<u64>>,
    /// (pivot column, pivot value) per row.
    pivots: Vec<(usize, u64)>,
}

impl Subgroup {
    pub fn from_gens<I>(ambient: &ZModule, gens: I) -> Subgroup
    where
        I: IntoIterator<Item = Vec<Coord>>,
    {
        let n = ambient.common_modulus().max(1);
        let scale: Vec<u64> = ambient
            .moduli()
            .iter()
            .map(|&m| n / m as u64)
            .collect();
        let scaled: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|g| {
                g.iter()
                    .zip(&scale)
                    .map(|(&x, &s)| (x as u64 * s) % n)
                    .collect()
            })
            .collect();
        let rows = howell(scaled, ambient.rank(), n);
        let pivots = rows
            .iter()
            .map(|r| {
                let c = r.iter().position(|&x| x != 0).expect("zero row survived");
                (c, r[c])
            })
            .collect();
        Subgroup {
            ambient: ambient.clone(),
            n,
            scale,
            rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> &ZModule {
        &self.ambient
    }

    fn scale_elt(&self, e: &[Coord]) -> Vec<u64> {
        e.iter()
            .zip(&self.scale)
            .map(|(&x, &s)| (x as u64 * s) % self.n)
            .collect()
    }

    fn unscale(&self, v: &[u64]) -> Vec<Coord> {
        v.iter()
            .zip(&self.scale)
            .zip(self.ambient.moduli())
            .map(|((&x, &s), &m)| {
                debug_assert_eq!(x % s, 0);
                ((x / s) % m as u64) as Coord
            })
            .collect()
    }

    pub fn contains(&self, e: &[Coord]) -> bool {
        let mut v = self.scale_elt(e);
        for (row, &(c, p)) in self.rows.iter().zip(&self.pivots) {
            if v[c] != 0 {
                if v[c] % p != 0 {
                    return false;
                }
                let k = v[c] / p;
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + (self.n - (k * r) % self.n)) % self.n;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn size(&self) -> u128 {
        self.pivots
            .iter()
            .map(|&(_, p)| (self.n / gcd(p, self.n)) as u128)
            .product()
    }

    /// Canonical generating set (unscaled).
    pub fn basis(&self) -> Vec<Vec<Coord>> {
        self.rows.iter().map(|r| self.unscale(r)).collect()
    }

    /// Row orders in the Howell filtration; the element enumeration ranges
    /// row i over 0..order(i).
    pub fn row_orders(&self) -> Vec<u64> {
        self.pivots.iter().map(|&(_, p)| self.n / gcd(p, self.n)).collect()
    }

    /// All elements, sorted lexicographically. Panics if the subgroup has
    /// more than `limit` elements.
    pub fn elements(&self, limit: usize) -> Vec<Vec<Coord>> {
        let sz = self.size();
        assert!(sz <= limit as u128, "subgroup too large to enumerate: {sz}");
        let orders = self.row_orders();
        let mut out = Vec::with_capacity(sz as usize);
        let mut counters = vec![0u64; orders.len()];
        loop {
            let mut acc = vec![0u64; self.ambient.rank()];
            for (row, &k) in self.rows.iter().zip(&counters) {
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a = (*a + k * r) % self.n;
                }
            }
            out.push(self.unscale(&acc));
            let mut i = 0;
            loop {
                if i == counters.len() {
                    out.sort();
                    out.dedup();
                    debug_assert_eq!(out.len() as u128, sz);
                    return out;
                }
                counters[i] += 1;
                if counters[i] < orders[i] {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
        }
    }

    /// The subgroup {h ∈ self : f(h) = 0} for an additive map `f` into
    /// `target`, computed by a Howell pass with target columns leading.
    pub fn kernel_of<F>(&self, target: &ZModule, f: F) -> Subgroup
    where
        F: Fn(&[Coord]) -> Vec<Coord>,
    {
        let joint = target.concat(&self.ambient);
        let gens: Vec<Vec<Coord>> = self
            .basis()
            .iter()
            .map(|b| {
                let mut v = f(b);
                debug_assert_eq!(v.len(), target.rank());
                v.extend_from_slice(b);
                v
            })
            .collect();
        let big = Subgroup::from_gens(&joint, gens);
        let tr = target.rank();
        let kept: Vec<Vec<Coord>> = big
            .basis()
            .into_iter()
            .filter(|r| r[..tr].iter().all(|&x| x == 0))
            .map(|r| r[tr..].to_vec())
            .collect();
        Subgroup::from_gens(&self.ambient, kept)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Canonical coefficients of an element over the Howell rows, if it lies
    /// in the subgroup: e = Σ cᵢ·rowᵢ with 0 ≤ cᵢ < row_order(i).
    pub fn coords_of(&self, e: &[Coord]) -> Option<Vec<u64>> {
        let mut v = self.scale_elt(e);
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &(c, p)) in self.rows.iter().zip(&self.pivots) {
            let k = if v[c] == 0 {
                0
            } else {
                if v[c] % p != 0 {
                    return None;
                }
                v[c] / p
            };
            for (x, &r) in v.iter_mut().zip(row) {
                *x = (*x + (self.n - (k * r) % self.n)) % self.n;
            }
            coeffs.push(k % (self.n / gcd(p, self.n)));
        }
        if v.iter().all(|&x| x == 0) {
            Some(coeffs)
        } else {
            None
        }
    }
}

/// A subgroup re-presented as an abstract coordinate module: coordinates are
/// the canonical coefficients over the Howell rows.
#[derive(Clone, Debug)]
pub struct SubCoords {
    pub sub: Subgroup,
    pub module: ZModule,
}

impl SubCoords {
    pub fn new(sub: Subgroup) -> SubCoords {
        let moduli: Vec<Coord> = sub
            .row_orders()
            .iter()
            .map(|&o| {
                assert!(o <= Coord::MAX as u64);
                o as Coord
            })
            .collect();
        SubCoords {
            module: ZModule::new(moduli),
            sub,
        }
    }

    pub fn to_ambient(&self, c: &[Coord]) -> Vec<Coord> {
        let amb = self.sub.ambient();
        let mut acc = amb.zero();
        for (ci, row) in c.iter().zip(self.sub.basis()) {
            if *ci != 0 {
                acc = amb.add(&acc, &amb.smul(*ci as i64, &row));
            }
        }
        acc
    }

    pub fn from_ambient(&self, e: &[Coord]) -> Option<Vec<Coord>> {
        let c = self.sub.coords_of(e)?;
        Some(c.iter().map(|&x| x as Coord).collect())
    }
}

/// Apply a coordinatewise-additive map given by images of the source basis.
pub fn apply_lin(target: &ZModule, images: &[Vec<Coord>], x: &[Coord]) -> Vec<Coord> {
    let mut acc = target.zero();
    for (xi, img) in x.iter().zip(images) {
        if *xi != 0 {
            acc = target.add(&acc, &target.smul(*xi as i64, img));
        }
    }
    acc
}

/// Howell normal form of the row span inside (Z/N)^n.
fn howell(mut rows: Vec<Vec<u64>>, cols: usize, n: u64) -> Vec<Vec<u64>> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut placed: Vec<Vec<u64>> = Vec::new();
    let mut queue = rows;
    let mut col = 0;
    while col < cols {
        // combine queue rows to one pivot row for this column
        let mut pivot_row: Option<Vec<u64>> = None;
        let mut rest = Vec::new();
        for r in queue.drain(..) {
            debug_assert!(r[..col].iter().all(|&x| x == 0));
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            match pivot_row.take() {
                None => pivot_row = Some(r),
                Some(p) => {
                    let (combined, reduced) = merge_rows(&p, &r, col, n);
                    pivot_row = Some(combined);
                    if reduced.iter().any(|&x| x != 0) {
                        rest.push(reduced);
                    }
                }
            }
        }
        if let Some(mut p) = pivot_row {
            // normalize pivot to gcd(p[col], n) by unit scaling
            let g = gcd(p[col], n);
            let (_, s, _) = xgcd(p[col] as i128, n as i128);
            let u = (s.rem_euclid(n as i128)) as u64; // u * p[col] ≡ g (mod n)
            debug_assert_eq!((u as u128 * p[col] as u128) % n as u128, g as u128);
            for x in p.iter_mut() {
                *x = ((*x as u128 * u as u128) % n as u128) as u64;
            }
            debug_assert_eq!(p[col], g);
            // annihilator shadow for later columns
            let ann = n / g;
            if ann > 1 {
                let shadow: Vec<u64> = p
                    .iter()
                    .map(|&x| ((x as u128 * ann as u128) % n as u128) as u64)
                    .collect();
                debug_assert_eq!(shadow[col], 0);
                if shadow.iter().any(|&x| x != 0) {
                    rest.push(shadow);
                }
            }
            placed.push(p);
        }
        queue = rest;
        col += 1;
    }
    // reduce entries above pivots
    for i in (0..placed.len()).rev() {
        let (c, g) = {
            let r = &placed[i];
            let c = r.iter().position(|&x| x != 0).unwrap();
            (c, r[c])
        };
        let row_i = placed[i].clone();
        for j in 0..i {
            let k = placed[j][c] / g;
            if k != 0 {
                for (x, &r) in placed[j].iter_mut().zip(&row_i) {
                    *x = (*x + (n - (k * r) % n)) % n;
                }
            }
        }
    }
    placed
}

/// Row combination for Howell: returns (pivot row with col entry gcd,
/// eliminated second row).
fn merge_rows(a: &[u64], b: &[u64], col: usize, n: u64) -> (Vec<u64>, Vec<u64>) {
    let (g, s, t) = xgcd(a[col] as i128, b[col] as i128);
    let g = g as u64;
    let comb: Vec<u64> = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| {
            let v = (s * x as i128 + t * y as i128).rem_euclid(n as i128);
            v as u64
        })
        .collect();
    debug_assert_eq!(comb[col] % g, 0);
    // eliminate b using comb
    let k = b[col] / g;
    let red: Vec<u64> = b
        .iter()
        .zip(&comb)
        .map(|(&y, &c)| (y + (n - (k as u128 * c as u128 % n as u128) as u64)) % n)
        .collect();
    debug_assert_eq!(red[col], 0);
    (comb, red)
}

/// Quotient of ⊕ Z/mᵢ by a subgroup, with projection and lift maps, built
/// from an integer Smith normal form with tracked transforms.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: ZModule,
    /// Invariant factors > 1 with their positions in the diagonal.
    quotient: ZModule,
    kept: Vec<usize>,
    diag: Vec<i64>,
    v: Vec<Vec<i64>>,
    vinv: Vec<Vec<i64>>,
}

impl QuotientMap {
    pub fn new(source: &ZModule, sub: &Subgroup) -> QuotientMap {
        let n = source.rank();
        let mut rows: Vec<Vec<i64>> = sub
            .basis()
            .iter()
            .map(|b| b.iter().map(|&x| x as i64).collect())
            .collect();
        for (i, &m) in source.moduli().iter().enumerate() {
            let mut r = vec![0i64; n];
            r[i] = m as i64;
            rows.push(r);
        }
        let (diag, v, vinv) = smith_diagonalize(rows, n);
        let mut kept = Vec::new();
        let mut moduli = Vec::new();
        for (i, &d) in diag.iter().enumerate() {
            assert!(d != 0, "quotient has free part");
            if d.unsigned_abs() > 1 {
                assert!(d.unsigned_abs() <= Coord::MAX as u64);
                kept.push(i);
                moduli.push(d.unsigned_abs() as Coord);
            }
        }
        QuotientMap {
            source: source.clone(),
            quotient: ZModule::new(moduli),
            kept,
            diag,
            v,
            vinv,
        }
    }

    pub fn quotient(&self) -> &ZModule {
        &self.quotient
    }

    pub fn project(&self, e: &[Coord]) -> Vec<Coord> {
        debug_assert_eq!(e.len(), self.source.rank());
        self.kept
            .iter()
            .map(|&j| {
                let mut acc: i64 = 0;
                for (i, &x) in e.iter().enumerate() {
                    acc += x as i64 * self.v[i][j];
                }
                acc.rem_euclid(self.diag[j]) as Coord
            })
            .collect()
    }

    /// Some preimage of a quotient element.
    pub fn lift(&self, q: &[Coord]) -> Vec<Coord> {
        let n = self.source.rank();
        let mut y = vec![0i64; n];
        for (k, &j) in self.kept.iter().enumerate() {
            y[j] = q[k] as i64;
        }
        let mut x = vec![0i64; n];
        for j in 0..n {
            for i in 0..n {
                x[i] += y[j] * self.vinv[j][i];
            }
        }
        self.source.reduce(&x)
    }
}

/// Diagonalize the row span of an integer matrix by unimodular column ops
/// (rows may be combined/reordered freely). Returns (diag, V, V^{-1}) where
/// the span of the transformed rows is ⊕ diag[i]·e_i and column ops are
/// accumulated in V (source coords → new coords via x·V).
fn smith_diagonalize(mut a: Vec<Vec<i64>>, n: usize) -> (Vec<i64>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut v = ident(n);
    let mut vinv = ident(n);
    let rows = a.len();
    let mut t = 0usize;
    while t < n && t < rows {
        // find nonzero entry in submatrix [t.., t..] with minimal abs value
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..n {
                if a[i][j] != 0
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        if bj != t {
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for r in v.iter_mut() {
                r.swap(t, bj);
            }
            vinv.swap(t, bj);
        }
        let mut clean = true;
        // clear column t below using row ops
        for i in t + 1..rows {
            if a[i][t] != 0 {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
        }
        // clear row t to the right using column ops
        for j in t + 1..n {
            if a[t][j] != 0 {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    colop(&mut a, &mut v, &mut vinv, j, t, -q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
        }
        if clean {
            t += 1;
        }
    }
    let mut diag = vec![0i64; n];
    for (i, d) in diag.iter_mut().enumerate() {
        *d = if i < rows { a[i][i].abs() } else { 0 };
    }
    (diag, v, vinv)
}

fn ident(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Column op: col_j += k * col_t, accumulated into V and V^{-1}.
fn colop(a: &mut [Vec<i64>], v: &mut [Vec<i64>], vinv: &mut [Vec<i64>], j: usize, t: usize, k: i64) {
    for row in a.iter_mut() {
        row[j] += k * row[t];
    }
    for r in v.iter_mut() {
        r[j] += k * r[t];
    }
    // (E^{-1})·Vinv where E adds k·col_t to col_j: E^{-1} subtracts k·row_j from row_t...
    // Vinv rows transform: row_t -= k * row_j.
    for c in 0..vinv[0].len() {
        vinv[t][c] -= k * vinv[j][c];
    }
}

/// Solve Σ cᵢ·gens[i] = target in the module; returns integer coefficients
/// if solvable.
pub fn solve_combination(
    module: &ZModule,
    gens: &[Vec<Coord>],
    target: &[Coord],
) -> Option<Vec<i64>> {
    let n = module.rank();
    let mut rows: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| x as i64).collect())
        .collect();
    let torsion_start = rows.len();
    for (i, &m) in module.moduli().iter().enumerate() {
        let mut r = vec![0i64; n];
        r[i] = m as i64;
        rows.push(r);
    }
    // Track row transforms: rows_current = U * rows_original.
    let rcount = rows.len();
    let mut u = ident(rcount);
    let mut a = rows;
    let mut v = ident(n);
    // simple fraction-free diagonalization tracking U and V
    let mut t = 0usize;
    while t < n && t < rcount {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rcount {
            for j in t..n {
                if a[i][j] != 0
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        u.swap(t, bi);
        if bj != t {
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for r in v.iter_mut() {
                r.swap(t, bj);
            }
        }
        let mut clean = true;
        for i in 0..rcount {
            if i != t && a[i][t] != 0 {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rcount {
                        u[i][j] -= q * u[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
        }
        for j in t + 1..n {
            if a[t][j] != 0 {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for r in v.iter_mut() {
                        r[j] -= q * r[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
        }
        if clean {
            t += 1;
        }
    }
    // target in new coords: t·V
    let tv: Vec<i64> = (0..n)
        .map(|j| {
            target
                .iter()
                .enumerate()
                .map(|(i, &x)| x as i64 * v[i][j])
                .sum()
        })
        .collect();
    // solve z·D = tv
    let mut z = vec![0i64; rcount];
    for j in 0..n {
        let d = if j < rcount { a[j][j] } else { 0 };
        if d == 0 {
            if tv[j] != 0 {
                return None;
            }
        } else {
            if tv[j] % d != 0 {
                return None;
            }
            z[j] = tv[j] / d;
        }
    }
    // x = z·U, keep only the generator coefficients
    let x: Vec<i64> = (0..rcount)
        .map(|j| (0..rcount).map(|i| z[i] * u[i][j]).sum())
        .collect();
    Some(x[..torsion_start].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_arithmetic() {
        let m = ZModule::new(vec![2, 3, 4]);
        assert_eq!(m.size(), 24);
        let a = vec![1, 2, 3];
        let b = vec![1, 2, 2];
        assert_eq!(m.add(&a, &b), vec![0, 1, 1]);
        assert_eq!(m.neg(&a), vec![1, 1, 1]);
        assert_eq!(m.smul(5, &a), vec![1, 1, 3]);
        assert_eq!(m.iter_all().count(), 24);
        assert_eq!(m.order_of(&vec![0, 1, 2]), 6);
    }

    #[test]
    fn subgroup_membership_and_size() {
        // 2Z/4 inside Z/4
        let m = ZModule::new(vec![4]);
        let h = Subgroup::from_gens(&m, vec![vec![2]]);
        assert_eq!(h.size(), 2);
        assert!(h.contains(&[0]));
        assert!(h.contains(&[2]));
        assert!(!h.contains(&[1]));
        assert_eq!(h.elements(10), vec![vec![0], vec![2]]);
    }

    #[test]
    fn subgroup_mixed_moduli() {
        // diagonal of Z/2 ⊕ Z/4 generated by (1, 2), plus (0, 2)
        let m = ZModule::new(vec![2, 4]);
        let h = Subgroup::from_gens(&m, vec![vec![1, 2], vec![0, 2]]);
        assert_eq!(h.size(), 4);
        assert!(h.contains(&[1, 0]));
        assert!(!h.contains(&[0, 1]));
        // enumerate matches brute force closure
        let mut brute = vec![m.zero()];
        loop {
            let mut grew = false;
            let snapshot = brute.clone();
            for x in &snapshot {
                for g in [vec![1, 2], vec![0, 2]] {
                    let y = m.add(x, &g);
                    if !brute.contains(&y) {
                        brute.push(y);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        brute.sort();
        assert_eq!(h.elements(100), brute);
    }

    #[test]
    fn kernel_of_map() {
        // f: Z/4 ⊕ Z/4 → Z/4, (x, y) ↦ x + 2y; kernel inside full module
        let m = ZModule::new(vec![4, 4]);
        let full = Subgroup::from_gens(&m, vec![vec![1, 0], vec![0, 1]]);
        let t = ZModule::new(vec![4]);
        let ker = full.kernel_of(&t, |e| vec![((e[0] as u16 + 2 * e[1] as u16) % 4) as u8]);
        assert_eq!(ker.size(), 4);
        for e in ker.elements(100) {
            assert_eq!((e[0] as u16 + 2 * e[1] as u16) % 4, 0);
        }
    }

    #[test]
    fn quotient_map_roundtrip() {
        // (Z/4 ⊕ Z/2) / <(2,1)> has order 4
        let m = ZModule::new(vec![4, 2]);
        let h = Subgroup::from_gens(&m, vec![vec![2, 1]]);
        let q = QuotientMap::new(&m, &h);
        assert_eq!(q.quotient().size(), 4);
        // projection is a homomorphism with kernel h
        for a in m.iter_all() {
            for b in m.iter_all() {
                let lhs = q.project(&m.add(&a, &b));
                let rhs = q
                    .quotient()
                    .add(&q.project(&a), &q.project(&b));
                assert_eq!(lhs, rhs);
            }
            let za = q.project(&a);
            assert_eq!(q.quotient().is_zero(&za), h.contains(&a));
            // lift then project is identity on the quotient
            assert_eq!(q.project(&q.lift(&za)), za);
        }
    }

    #[test]
    fn solve_combination_works() {
        let m = ZModule::new(vec![4, 4]);
        let gens = vec![vec![2, 0], vec![1, 1]];
        let t = vec![3, 1];
        let c = solve_combination(&m, &gens, &t).expect("solvable");
        let mut acc = m.zero();
        for (ci, g) in c.iter().zip(&gens) {
            acc = m.add(&acc, &m.smul(*ci, g));
        }
        assert_eq!(acc, t);
        assert!(solve_combination(&m, &[vec![2, 0]], &[1, 0]).is_none());
    }
}
