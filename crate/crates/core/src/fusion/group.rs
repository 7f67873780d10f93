//! Finite groups of group-likes, given by multiplication tables.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FusionError;

/// A finite group on elements `0..order` with identity `0`.
///
/// Groups built with [`GrouplikeGroup::abelian`] are direct products of
/// cyclic groups and know their factors; elements are encoded mixed-radix,
/// with the first factor varying fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrouplikeGroup {
    factors: Option<Vec<u64>>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl GrouplikeGroup {
    pub fn trivial() -> Self {
        GrouplikeGroup::abelian(&[])
    }

    pub fn cyclic(n: u64) -> Self {
        GrouplikeGroup::abelian(&[n])
    }

    /// `Z/n1 x Z/n2 x ...`; factors equal to 1 are dropped.
    pub fn abelian(factors: &[u64]) -> Self {
        let factors: Vec<u64> = factors.iter().copied().filter(|&n| n > 1).collect();
        let order: usize = factors.iter().product::<u64>() as usize;
        let digits = |mut x: usize| -> Vec<usize> {
            factors
                .iter()
                .map(|&n| {
                    let d = x % n as usize;
                    x /= n as usize;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| -> usize {
            let mut x = 0;
            for (i, &n) in factors.iter().enumerate().rev() {
                x = x * n as usize + ds[i];
            }
            x
        };
        let table: Vec<Vec<usize>> = (0..order)
            .map(|a| {
                let da = digits(a);
                (0..order)
                    .map(|b| {
                        let db = digits(b);
                        let sum: Vec<usize> =
                            (0..factors.len()).map(|i| (da[i] + db[i]) % factors[i] as usize).collect();
                        encode(&sum)
                    })
                    .collect()
            })
            .collect();
        let inverse = (0..order).map(|a| (0..order).find(|&b| table[a][b] == 0).unwrap()).collect();
        GrouplikeGroup { factors: Some(factors), table, inverse }
    }

    /// A group from its multiplication table; the group axioms are checked.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, FusionError> {
        let n = table.len();
        let bad = |why: &str| FusionError::InvalidGroup(why.to_string());
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad("table is not square over 0..n"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(bad("element 0 is not the identity"));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("multiplication is not associative"));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse.push(b),
                None => return Err(bad("missing inverse")),
            }
        }
        Ok(GrouplikeGroup { factors: None, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn factors(&self) -> Option<&[u64]> {
        self.factors.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A generating set: the unit vectors for product groups, otherwise a
    /// greedy choice.
    pub fn generators(&self) -> Vec<usize> {
        if let Some(f) = &self.factors {
            let mut stride = 1;
            return f
                .iter()
                .map(|&n| {
                    let g = stride;
                    stride *= n as usize;
                    g
                })
                .collect();
        }
        let mut gens = Vec::new();
        let mut sub = vec![0];
        for a in 0..self.order() {
            if !sub.contains(&a) {
                gens.push(a);
                sub = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    /// `Z/4`, `Z/2xZ/2`, or `group of order n` for table-defined groups.
    pub fn label(&self) -> String {
        match &self.factors {
            Some(f) if f.is_empty() => "trivial".to_string(),
            Some(f) => f.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join("x"),
            None => format!("group of order {}", self.order()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
}

impl Serialize for GrouplikeGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let table = if self.factors.is_none() { Some(self.table.clone()) } else { None };
        GroupRepr { label: self.label(), factors: self.factors.clone(), table }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrouplikeGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(d)?;
        match (repr.factors, repr.table) {
            (Some(f), _) => Ok(GrouplikeGroup::abelian(&f)),
            (None, Some(t)) => GrouplikeGroup::from_table(t).map_err(serde::de::Error::custom),
            (None, None) => Err(serde::de::Error::custom("group needs factors or a table")),
        }
    }
}

/// The isomorphism classes of abelian groups of order `n`, as lists of
/// prime-power cyclic factors. Cyclic first.
pub fn abelian_classes(n: u64) -> Vec<Vec<u64>> {
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in primes {
        let options: Vec<Vec<u64>> =
            partitions(e).into_iter().map(|part| part.into_iter().map(|k| p.pow(k)).collect()).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |opt| {
                    let mut v = prefix.clone();
                    v.extend(opt);
                    v
                })
            })
            .collect();
    }
    out
}

/// Partitions of `n` into nonincreasing parts, coarsest first.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_tables_satisfy_axioms() {
        for f in [vec![], vec![2], vec![4], vec![2, 2], vec![2, 4], vec![3, 3], vec![11], vec![2, 2, 2]] {
            let g = GrouplikeGroup::abelian(&f);
            let again = GrouplikeGroup::from_table(g.table().to_vec()).unwrap();
            assert_eq!(again.order(), g.order());
            assert!(g.is_abelian());
            assert_eq!(g.subgroup_generated(&g.generators()).len(), g.order());
        }
    }

    #[test]
    fn classes() {
        assert_eq!(abelian_classes(1), vec![Vec::<u64>::new()]);
        assert_eq!(abelian_classes(4), vec![vec![4], vec![2, 2]]);
        assert_eq!(abelian_classes(121), vec![vec![121], vec![11, 11]]);
        assert_eq!(abelian_classes(16).len(), 5);
        assert_eq!(abelian_classes(12), vec![vec![4, 3], vec![2, 2, 3]]);
    }

    #[test]
    fn element_orders() {
        let g = GrouplikeGroup::abelian(&[2, 4]);
        let orders: Vec<usize> = (0..8).map(|a| g.element_order(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 4);
        assert_eq!(g.label(), "Z/2xZ/4");
    }

    #[test]
    fn rejects_non_groups() {
        assert!(GrouplikeGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}
