//! Finite groups as explicit multiplication tables. Element 0 is always the
//! identity. Tables are validated at construction: identity laws and
//! inverses exactly, associativity exhaustively up to order 64 and by seeded
//! random sampling above that.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("a group table needs at least one element")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("entry table[{a}][{b}] = {found} is out of range")]
    EntryOutOfRange { a: usize, b: usize, found: usize },
    #[error("element 0 is not an identity: 0*{b} = {found}")]
    IdentityLeft { b: usize, found: usize },
    #[error("element 0 is not an identity: {a}*0 = {found}")]
    IdentityRight { a: usize, found: usize },
    #[error("element {a} has no inverse")]
    MissingInverse { a: usize },
    #[error("associativity fails at ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivideOrder { p: u64, order: usize },
    #[error("table admits no element of order {p}; not a valid group")]
    NoElementOfPrimeOrder { p: u64 },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupFormatError {
    #[error("line {line}: expected `group order=<N>`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: bad entry {found:?}")]
    BadEntry { line: usize, found: String },
    #[error("expected {expected} rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("line {line}: row has {found} entries, expected {expected}")]
    WrongRowLength {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error(transparent)]
    Invalid(#[from] GroupError),
}

/// A finite group of order N on elements 0..N, element 0 the identity,
/// with table[a][b] = a*b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupTable, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::RaggedRow {
                    row,
                    found: r.len(),
                    expected: n,
                });
            }
            for (b, &entry) in r.iter().enumerate() {
                if entry >= n {
                    return Err(GroupError::EntryOutOfRange {
                        a: row,
                        b,
                        found: entry,
                    });
                }
            }
        }
        for x in 0..n {
            if table[0][x] != x {
                return Err(GroupError::IdentityLeft {
                    b: x,
                    found: table[0][x],
                });
            }
            if table[x][0] != x {
                return Err(GroupError::IdentityRight {
                    a: x,
                    found: table[x][0],
                });
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(GroupError::MissingInverse { a }),
            }
        }
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            // Fixed seed keeps validation reproducible.
            let mut rng = ChaCha8Rng::seed_from_u64(0x67726f7570);
            for _ in 0..10 * n * n {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
        Ok(GroupTable { table, inverse })
    }

    /// The cyclic group Z_n written additively on 0..n.
    pub fn cyclic(n: usize) -> GroupTable {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        GroupTable::new(table).expect("cyclic tables are groups")
    }

    /// The symmetric group on 3 points. Elements are the six permutations
    /// in lexicographic one-line order (012, 021, 102, 120, 201, 210), so
    /// the identity lands at index 0; composition is (s*t)(x) = s(t(x)).
    pub fn symmetric3() -> GroupTable {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index_of = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index_of([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        GroupTable::new(table).expect("permutation composition is a group")
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

    /// Multiplicative order of an element: least k >= 1 with a^k = 0.
    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    /// Powers a^0 .. a^(k-1).
    pub fn powers(&self, a: usize, k: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(k);
        let mut acc = 0;
        for _ in 0..k {
            out.push(acc);
            acc = self.mul(acc, a);
        }
        out
    }
}

/// First element (in index order) of order exactly p. Such an element
/// exists whenever p is prime and divides the group order.
pub fn cauchy_element(g: &GroupTable, p: u64) -> Result<usize, GroupError> {
    if p == 0 || g.order() as u64 % p != 0 {
        return Err(GroupError::PrimeDoesNotDivideOrder {
            p,
            order: g.order(),
        });
    }
    (0..g.order())
        .find(|&a| g.element_order(a) as u64 == p)
        .ok_or(GroupError::NoElementOfPrimeOrder { p })
}

pub fn write_group(g: &GroupTable) -> String {
    let mut out = String::new();
    writeln!(out, "group order={}", g.order()).unwrap();
    for a in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|b| g.mul(a, b).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn parse_group(text: &str) -> Result<GroupTable, GroupFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(GroupFormatError::BadHeader {
        line: 1,
        found: String::new(),
    })?;
    let order: usize = header
        .strip_prefix("group order=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or(GroupFormatError::BadHeader {
            line: hline,
            found: header.to_string(),
        })?;
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(order);
    for (line, text) in lines {
        let entries: Result<Vec<usize>, _> = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| GroupFormatError::BadEntry {
                    line,
                    found: t.to_string(),
                })
            })
            .collect();
        let entries = entries?;
        if entries.len() != order {
            return Err(GroupFormatError::WrongRowLength {
                line,
                found: entries.len(),
                expected: order,
            });
        }
        rows.push(entries);
    }
    if rows.len() != order {
        return Err(GroupFormatError::WrongRowCount {
            expected: order,
            found: rows.len(),
        });
    }
    Ok(GroupTable::new(rows)?)
}
