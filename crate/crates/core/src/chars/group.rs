use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a finite group was specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupDescriptor {
    Cyclic(u32),
    ExplicitTable {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    },
}

/// JSON input shape for explicit multiplication tables.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableInput {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// A finite group with precomputed conjugacy classes.
///
/// Elements are indices `0..order`. Classes are sorted by their least element
/// index, which is also the class representative; the identity class comes
/// first.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    descriptor: GroupDescriptor,
    order: usize,
    identity: usize,
    inverse: Vec<usize>,
    element_order: Vec<u32>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    class_inverse: Vec<usize>,
    exponent: u32,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl FiniteGroup {
    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cyclic group of order 0"));
        }
        let nn = n as usize;
        let inverse: Vec<usize> = (0..nn).map(|k| (nn - k) % nn).collect();
        let element_order: Vec<u32> = (0..n).map(|k| n / k.gcd(&n)).collect();
        Ok(FiniteGroup {
            descriptor: GroupDescriptor::Cyclic(n),
            order: nn,
            identity: 0,
            classes: (0..nn).map(|k| vec![k]).collect(),
            class_of: (0..nn).collect(),
            class_inverse: inverse.clone(),
            inverse,
            element_order,
            exponent: n,
        })
    }

    /// Validates a multiplication table (closure, associativity, identity,
    /// inverses) and derives its class structure.
    pub fn from_table(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::invalid("empty group"));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("table must be |G| x |G|"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::invalid("table entry out of range"));
        }
        let m = |a: usize, b: usize| table[a][b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::invalid(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::invalid("no identity element"))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::invalid(format!("{} has no inverse", elements[a])))?;
        }
        let element_order: Vec<u32> = (0..n)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != identity {
                    x = m(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let class: BTreeSet<usize> = (0..n).map(|g| m(m(g, a), inverse[g])).collect();
            for &x in &class {
                class_of[x] = classes.len();
            }
            classes.push(class.into_iter().collect::<Vec<_>>());
        }
        // identity first, then by least element
        let mut order_idx: Vec<usize> = (0..classes.len()).collect();
        order_idx.sort_by_key(|&c| (classes[c][0] != identity, classes[c][0]));
        let classes: Vec<Vec<usize>> = order_idx.iter().map(|&c| classes[c].clone()).collect();
        for (ci, class) in classes.iter().enumerate() {
            for &x in class {
                class_of[x] = ci;
            }
        }
        let class_inverse = classes.iter().map(|c| class_of[inverse[c[0]]]).collect();
        let exponent = element_order.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        Ok(FiniteGroup {
            descriptor: GroupDescriptor::ExplicitTable { elements, table },
            order: n,
            identity,
            inverse,
            element_order,
            classes,
            class_of,
            class_inverse,
            exponent,
        })
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let t: TableInput =
            serde_json::from_str(json).map_err(|e| Error::invalid(format!("table JSON: {e}")))?;
        Self::from_table(t.elements, t.table)
    }

    /// Symmetric group S_n (n ≤ 6) with permutations listed lexicographically
    /// in one-line notation; the identity is element 0.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::invalid("symmetric group supported for 1 ≤ n ≤ 6"));
        }
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.binary_search(p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a·b)(i) = a(b(i))
                        let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<String>())
            .collect();
        Self::from_table(labels, table)
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.descriptor {
            GroupDescriptor::Cyclic(n) => (a + b) % *n as usize,
            GroupDescriptor::ExplicitTable { table, .. } => table[a][b],
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.element_order[a]
    }

    pub fn label(&self, a: usize) -> String {
        match &self.descriptor {
            GroupDescriptor::Cyclic(_) => a.to_string(),
            GroupDescriptor::ExplicitTable { elements, .. } => elements[a].clone(),
        }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.classes[class].len()
    }

    /// τ: ⟨h⟩ ↦ ⟨h⁻¹⟩ on class indices.
    pub fn tau(&self, class: usize) -> usize {
        self.class_inverse[class]
    }

    pub fn identity_class(&self) -> usize {
        0
    }

    /// Order of the cyclotomic field holding all character values.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn cyclic_order(&self) -> Option<u32> {
        match self.descriptor {
            GroupDescriptor::Cyclic(n) => Some(n),
            _ => None,
        }
    }

    /// Parses `cyclic:N` or `sym:N`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("group spec {spec:?}: expected kind:arg")))?;
        let num = || {
            arg.parse::<u32>()
                .map_err(|_| Error::invalid(format!("group spec {spec:?}: bad number")))
        };
        match kind {
            "cyclic" | "z" => Self::cyclic(num()?),
            "sym" | "s" => Self::symmetric(num()? as usize),
            _ => Err(Error::invalid(format!("unknown group kind {kind:?}"))),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_classes() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.num_classes(), 3);
        let sizes: Vec<usize> = (0..3).map(|c| g.class_size(c)).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(g.classes()[0], vec![g.identity()]);
        assert_eq!(g.exponent(), 6);
        for c in 0..3 {
            assert_eq!(g.tau(c), c);
        }
    }

    #[test]
    fn table_validation() {
        let bad = FiniteGroup::from_table(
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![0, 1]],
        );
        assert!(bad.is_err());
        let z2 = FiniteGroup::from_json(r#"{"elements":["e","s"],"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(z2.num_classes(), 2);
        assert!(FiniteGroup::from_json(r#"{"elements":["e"],"table":[[1]]}"#).is_err());
        // not associative: a loop of order 3 with broken multiplication
        let nonassoc = FiniteGroup::from_table(
            vec!["e".into(), "a".into(), "b".into()],
            vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 2]],
        );
        assert!(nonassoc.is_err());
    }

    #[test]
    fn cyclic_structure() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(g.tau(1), 5);
        assert_eq!(g.element_order(4), 3);
        assert_eq!(g.mul(4, 5), 3);
        assert!(FiniteGroup::cyclic(0).is_err());
        assert_eq!(FiniteGroup::parse_spec("cyclic:5").unwrap().order(), 5);
        assert!(FiniteGroup::parse_spec("dihedral:5").is_err());
    }
}
