//! Small finite groups, their character tables, and the fusion tables of
//! their group algebras. Used as ground truth for the fusion engine.
//!
//! Character tables are computed with Dixon's method: the class-sum
//! structure constants are diagonalized over `F_p` for a prime
//! `p = 1 mod exponent`, and fusion multiplicities are recovered exactly
//! from their residues since they are smaller than `p`.

use crate::fusion::{abelian_classes, build_skeleton, Domain, FusionTable, GrouplikeGroup};
use crate::typeprofile::AlgebraType;

/// A finite group given by its multiplication table, identity `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Self {
        FiniteGroup { name: name.into(), table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("group elements have inverses")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, the identity's first, each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = (0..n).map(|x| self.mul(self.mul(x, g), self.inv(x))).collect();
            c.sort_unstable();
            c.dedup();
            for &y in &c {
                class_of[y] = out.len();
            }
            out.push(c);
        }
        out
    }

    /// Order statistics, centre and class count; distinguishes the groups
    /// in [`small_groups`].
    pub fn signature(&self) -> (usize, Vec<usize>, usize, usize, usize) {
        let n = self.order();
        let mut orders = vec![0; n + 1];
        for a in 0..n {
            orders[self.element_order(a)] += 1;
        }
        let centre = (0..n).filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a))).count();
        let squares: std::collections::BTreeSet<usize> = (0..n).map(|a| self.mul(a, a)).collect();
        (n, orders, centre, self.classes().len(), squares.len())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_table(format!("Z{n}"), (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let table = (0..na * nb)
        .map(|x| (0..na * nb).map(|y| a.mul(x % na, y % na) + na * b.mul(x / na, y / na)).collect())
        .collect();
    FiniteGroup::from_table(format!("{}x{}", a.name, b.name), table)
}

/// `N x| Z/n` where the generator of `Z/n` acts by the automorphism `phi`
/// (a permutation of `N`'s elements with `phi^n = 1`).
pub fn semidirect_cyclic(name: &str, normal: &FiniteGroup, n: usize, phi: &[usize]) -> FiniteGroup {
    let m = normal.order();
    let mut powers = vec![(0..m).collect::<Vec<usize>>()];
    for i in 1..n {
        let prev = &powers[i - 1];
        powers.push((0..m).map(|x| phi[prev[x]]).collect());
    }
    let table = (0..m * n)
        .map(|x| {
            let (a, i) = (x % m, x / m);
            (0..m * n)
                .map(|y| {
                    let (b, j) = (y % m, y / m);
                    normal.mul(a, powers[i][b]) + m * ((i + j) % n)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(name, table)
}

/// The dicyclic group of order `4m`: `<a, x | a^2m, x^2 = a^m, x a x^-1 = a^-1>`.
pub fn dicyclic(m: usize) -> FiniteGroup {
    let two_m = 2 * m;
    // Element a^k x^e is encoded as k + 2m e.
    let table = (0..4 * m)
        .map(|u| {
            let (k, e) = (u % two_m, u / two_m);
            (0..4 * m)
                .map(|v| {
                    let (l, f) = (v % two_m, v / two_m);
                    if e == 0 {
                        (k + l) % two_m + two_m * f
                    } else if f == 0 {
                        (k + two_m - l) % two_m + two_m
                    } else {
                        (k + two_m - l + m) % two_m
                    }
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(if m == 2 { "Q8".to_string() } else { format!("Dic{}", 4 * m) }, table)
}

/// The Pauli group: 2x2 matrices over the Gaussian integers generated by
/// `X`, `Z` and `iI`.
pub fn pauli() -> FiniteGroup {
    type M = [[(i64, i64); 2]; 2];
    fn mul(a: &M, b: &M) -> M {
        let mut c = [[(0, 0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let (x, y) = (a[i][k], b[k][j]);
                    c[i][j].0 += x.0 * y.0 - x.1 * y.1;
                    c[i][j].1 += x.0 * y.1 + x.1 * y.0;
                }
            }
        }
        c
    }
    let id: M = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]];
    let gens: [M; 3] = [
        [[(0, 0), (1, 0)], [(1, 0), (0, 0)]],
        [[(1, 0), (0, 0)], [(0, 0), (-1, 0)]],
        [[(0, 1), (0, 0)], [(0, 0), (0, 1)]],
    ];
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in &gens {
            let p = mul(&elems[i], g);
            if !elems.contains(&p) {
                elems.push(p);
            }
        }
        i += 1;
    }
    let index = |m: &M| elems.iter().position(|e| e == m).expect("closed under products");
    let table = elems.iter().map(|a| elems.iter().map(|b| index(&mul(a, b))).collect()).collect();
    FiniteGroup::from_table("Pauli", table)
}

/// Automorphism of `Z/n` given by multiplication with `k`.
fn times(n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|x| x * k % n).collect()
}

/// One representative of every isomorphism class of groups of order at
/// most 16 (42 groups).
pub fn small_groups() -> Vec<FiniteGroup> {
    let z = cyclic;
    let dihedral = |n: usize| semidirect_cyclic(&format!("D{}", 2 * n), &z(n), 2, &times(n, n - 1));
    let prod = |a: FiniteGroup, b: FiniteGroup| direct_product(&a, &b);
    let klein = || prod(z(2), z(2));
    let mut out = vec![z(1), z(2), z(3), z(4), klein(), z(5), z(6), dihedral(3), z(7)];
    out.extend([z(8), prod(z(4), z(2)), prod(klein(), z(2)), dihedral(4), dicyclic(2)]);
    out.extend([z(9), prod(z(3), z(3)), z(10), dihedral(5), z(11)]);
    // A4 = (Z2 x Z2) x| Z3, the generator cycling the three involutions.
    let a4 = semidirect_cyclic("A4", &klein(), 3, &[0, 2, 3, 1]);
    out.extend([z(12), prod(z(6), z(2)), dihedral(6), a4, dicyclic(3), z(13), z(14), dihedral(7), z(15)]);
    // Order 16. Z4 x Z2 is encoded a + 4b.
    let swap = [0, 2, 1, 3];
    out.extend([
        z(16),
        prod(z(4), z(4)),
        semidirect_cyclic("(Z2xZ2):Z4", &klein(), 4, &swap),
        semidirect_cyclic("Z4:Z4", &z(4), 4, &times(4, 3)),
        prod(z(8), z(2)),
        semidirect_cyclic("M16", &z(8), 2, &times(8, 5)),
        dihedral(8),
        semidirect_cyclic("SD16", &z(8), 2, &times(8, 3)),
        dicyclic(4),
        prod(z(4), klein()),
        prod(z(2), dihedral(4)),
        prod(z(2), dicyclic(2)),
        pauli(),
        prod(klein(), klein()),
    ]);
    out
}

/// A character table over `F_p`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub p: u64,
    pub classes: Vec<Vec<usize>>,
    pub degrees: Vec<u64>,
    /// `values[chi][class]`, reduced mod `p`.
    pub values: Vec<Vec<u64>>,
    inverse_class: Vec<usize>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Basis of `{u : m u = 0}` for an `rows x cols` matrix over `F_p`.
fn nullspace(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(r) = (row..a.len()).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, r);
        let inv = inv_mod(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..a.len() {
            if r2 != row && a[r2][col] != 0 {
                let f = a[r2][col];
                for c in 0..cols {
                    a[r2][c] = (a[r2][c] + p - f * a[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

pub fn character_table(g: &FiniteGroup) -> CharacterTable {
    let n = g.order();
    let e = g.exponent() as u64;
    let p = (1..).map(|k| k * e + 1).find(|&p| p > 2 * n as u64 && is_prime(p)).expect("primes exist");
    let classes = g.classes();
    let r = classes.len();
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let inverse_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    // a[j][i][k] = #{x in C_j : x^-1 z_k in C_i}.
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, ck) in classes.iter().enumerate() {
        let z = ck[0];
        for x in 0..n {
            let y = g.mul(g.inv(x), z);
            a[class_of[x]][class_of[y]][k] += 1;
        }
    }
    // Common eigenvectors of the matrices A_j = (a[j][i][k])_{ik}.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|k| (i == k) as u64).collect()).collect()];
    for aj in &a {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let d = basis.len();
            for lambda in 0..p {
                // (A_j - lambda) applied to the basis combination u.
                let m: Vec<Vec<u64>> = (0..r)
                    .map(|i| {
                        (0..d)
                            .map(|s| {
                                let mut acc = 0;
                                for k in 0..r {
                                    let coef = (aj[i][k] % p + if i == k { p - lambda } else { 0 }) % p;
                                    acc = (acc + coef * basis[s][k]) % p;
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                let ns = nullspace(&m, d, p);
                if !ns.is_empty() {
                    let sub: Vec<Vec<u64>> = ns
                        .iter()
                        .map(|u| (0..r).map(|k| (0..d).fold(0, |acc, s| (acc + u[s] * basis[s][k]) % p)).collect())
                        .collect();
                    next.push(sub);
                }
            }
        }
        spaces = next;
    }
    assert!(spaces.iter().all(|s| s.len() == 1) && spaces.len() == r, "class algebra did not split");
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let mut chars: Vec<(u64, Vec<u64>)> = spaces
        .into_iter()
        .map(|s| {
            let w = &s[0];
            let scale = inv_mod(w[0], p);
            let omega: Vec<u64> = w.iter().map(|x| x * scale % p).collect();
            let norm = (0..r).fold(0, |acc, k| (acc + omega[k] * omega[inverse_class[k]] % p * inv_mod(sizes[k], p)) % p);
            let d2 = n as u64 % p * inv_mod(norm, p) % p;
            let d = (1..=n as u64).find(|d| d * d % p == d2 && d * d <= n as u64).expect("degree is a square root");
            let values = (0..r).map(|k| d * omega[k] % p * inv_mod(sizes[k], p) % p).collect();
            (d, values)
        })
        .collect();
    chars.sort();
    CharacterTable {
        p,
        classes,
        degrees: chars.iter().map(|c| c.0).collect(),
        values: chars.into_iter().map(|c| c.1).collect(),
        inverse_class,
    }
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `m(c, a b)`, exactly.
    pub fn multiplicity(&self, a: usize, b: usize, c: usize) -> u64 {
        let p = self.p;
        let n: u64 = self.classes.iter().map(|c| c.len() as u64).sum();
        let mut acc = 0;
        for k in 0..self.classes.len() {
            let h = self.classes[k].len() as u64;
            acc = (acc + h * self.values[a][k] % p * self.values[b][k] % p * self.values[c][self.inverse_class[k]]) % p;
        }
        acc * inv_mod(n % p, p) % p
    }

    pub fn dual(&self, a: usize) -> usize {
        let conj: Vec<u64> = (0..self.classes.len()).map(|k| self.values[a][self.inverse_class[k]]).collect();
        self.values.iter().position(|v| *v == conj).expect("the dual is a character")
    }
}

/// The fusion table of the group algebra of `g`, with characters renumbered
/// so that the linear characters form a product of cyclic groups in the
/// standard encoding.
pub fn fusion_table_of(g: &FiniteGroup) -> FusionTable {
    let ct = character_table(g);
    let k = ct.len();
    let linear: Vec<usize> = (0..k).filter(|&i| ct.degrees[i] == 1).collect();
    let nl = linear.len();
    // Product of linear characters: the unique constituent.
    let lmul = |a: usize, b: usize| linear.iter().position(|&c| ct.multiplicity(linear[a], linear[b], c) == 1).unwrap();
    let lorder = |a: usize| {
        let (mut x, mut o) = (a, 1);
        while x != 0 {
            x = lmul(x, a);
            o += 1;
        }
        o
    };
    let (group, iso) = abelian_classes(nl as u64)
        .into_iter()
        .find_map(|f| {
            let target = GrouplikeGroup::abelian(&f);
            let gens = target.generators();
            let cands: Vec<Vec<usize>> =
                gens.iter().map(|&t| (0..nl).filter(|&x| lorder(x) == target.element_order(t)).collect()).collect();
            let mut choice = vec![0; gens.len()];
            loop {
                if cands.iter().all(|c| !c.is_empty()) {
                    let images: Vec<usize> = choice.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
                    if let Some(map) = extend_hom(&target, &gens, &images, &lmul, nl) {
                        return Some((target, map));
                    }
                }
                // Odometer over the candidate images.
                let mut pos = 0;
                loop {
                    if pos == choice.len() {
                        return None;
                    }
                    choice[pos] += 1;
                    if choice[pos] < cands[pos].len() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
            }
        })
        .expect("the linear characters form an abelian group");

    // New order: group-likes by the isomorphism, then the rest by degree.
    let mut order: Vec<usize> = (0..nl).map(|t| linear[iso[t]]).collect();
    order.extend((0..k).filter(|&i| ct.degrees[i] > 1));
    let mut entries: Vec<(u64, u64)> = Vec::new();
    for &i in &order {
        match entries.last_mut() {
            Some(e) if e.0 == ct.degrees[i] => e.1 += 1,
            _ => entries.push((ct.degrees[i], 1)),
        }
    }
    let ty = AlgebraType::new(g.order() as u64, entries).expect("degrees of a group satisfy the dimension equation");
    let mut table = build_skeleton(&ty, &group).expect("group order matches");
    let pos: Vec<usize> = {
        let mut v = vec![0; k];
        for (new, &old) in order.iter().enumerate() {
            v[old] = new;
        }
        v
    };
    for a in 0..k {
        table.set_dual(a, pos[ct.dual(order[a])]);
        for b in 0..k {
            for c in 0..k {
                let m = ct.multiplicity(order[a], order[b], order[c]) as u32;
                table.restrict(a, b, c, Domain::fixed(m));
                if a < nl && m == 1 {
                    table.set_action(a, b, c);
                }
            }
        }
    }
    table
}

/// The homomorphism sending generator `gens[i]` to `images[i]`, if it is an
/// isomorphism onto the linear characters.
fn extend_hom(
    target: &GrouplikeGroup,
    gens: &[usize],
    images: &[usize],
    lmul: &dyn Fn(usize, usize) -> usize,
    nl: usize,
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; target.order()];
    map[0] = 0;
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for (i, &h) in gens.iter().enumerate() {
            let y = target.mul(h, x);
            let img = lmul(images[i], map[x]);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    let mut seen = vec![false; nl];
    for &m in &map {
        if seen[m] {
            return None;
        }
        seen[m] = true;
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn there_are_forty_two_distinct_groups() {
        let groups = small_groups();
        assert_eq!(groups.len(), 42);
        let counts = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
        for (n, &c) in counts.iter().enumerate() {
            let of_order: Vec<&FiniteGroup> = groups.iter().filter(|g| g.order() == n + 1).collect();
            assert_eq!(of_order.len(), c, "order {}", n + 1);
            let sigs: std::collections::BTreeSet<_> = of_order.iter().map(|g| g.signature()).collect();
            assert_eq!(sigs.len(), c, "order {} has isomorphic duplicates", n + 1);
        }
        for g in &groups {
            let gg = GrouplikeGroup::from_table(g.table().to_vec());
            assert!(gg.is_ok(), "{} is not a group", g.name);
        }
    }

    #[test]
    fn known_degree_patterns() {
        let degrees = |g: &FiniteGroup| character_table(g).degrees;
        assert_eq!(degrees(&dicyclic(2)), vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees(&semidirect_cyclic("S3", &cyclic(3), 2, &times(3, 2))), vec![1, 1, 2]);
        let a4 = semidirect_cyclic("A4", &direct_product(&cyclic(2), &cyclic(2)), 3, &[0, 2, 3, 1]);
        assert_eq!(degrees(&a4), vec![1, 1, 1, 3]);
        assert_eq!(degrees(&pauli()), vec![1, 1, 1, 1, 1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn dihedral_eight_square() {
        let d8 = semidirect_cyclic("D8", &cyclic(4), 2, &times(4, 3));
        let t = fusion_table_of(&d8);
        assert_eq!(t.algebra_type().notation(), "(1,4;2,1)");
        for g in 0..4 {
            assert_eq!(t.entry(4, 4, g), Domain::ONE);
        }
    }
}
