//! Brute-force enumeration of H^2((Z/m)^N, Z/m'): count all cocycle
//! tables, count the distinct coboundaries, and report the quotient
//! order. The enumeration itself is the oracle; no external value is
//! asserted.

use std::collections::BTreeSet;

use crate::{exec, Error, Result};

use super::cocycle::TupleSpace;

/// Counts from the exhaustive cohomology scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Report {
    pub base_modulus: u64,
    pub dim: usize,
    pub value_modulus: u64,
    /// Number of table entries (|A|^{2N}).
    pub domain: u64,
    /// Total functions scanned (m'^domain).
    pub tables: u64,
    pub cocycles: u64,
    pub coboundaries: u64,
    /// cocycles / coboundaries (coboundaries form a subgroup, so this is
    /// exact).
    pub h2_order: u64,
}

struct Scan {
    m_value: u64,
    tuple_count: u64,
    domain: u64,
    add: Vec<u64>, // tuple addition table, tuple_count^2 entries
}

impl Scan {
    fn new(m: u64, dim: usize, m_value: u64) -> Result<Self> {
        let space = TupleSpace { modulus: m, dim };
        let tuple_count = space.count();
        let domain = tuple_count * tuple_count;
        if domain > 16 || m_value > 4 {
            return Err(Error::TooLargeToEnumerate(format!(
                "domain {domain} > 16 or value modulus {m_value} > 4"
            )));
        }
        let tables = (m_value as u128).pow(domain as u32);
        if tables > 1 << 20 {
            return Err(Error::TooLargeToEnumerate(format!(
                "{m_value}^{domain} tables exceed 2^20"
            )));
        }
        let add = (0..tuple_count * tuple_count)
            .map(|i| space.add(i / tuple_count, i % tuple_count))
            .collect();
        Ok(Scan {
            m_value,
            tuple_count,
            domain,
            add,
        })
    }

    fn tables(&self) -> u64 {
        (self.m_value as u128).pow(self.domain as u32) as u64
    }

    /// Decode table `code` (base-m' digits, pair-indexed) and test the
    /// cocycle identity on every triple.
    fn is_cocycle(&self, code: u64) -> bool {
        let a = self.tuple_count;
        let mv = self.m_value;
        let mut values = [0u64; 16];
        let mut c = code;
        for slot in values.iter_mut().take(self.domain as usize) {
            *slot = c % mv;
            c /= mv;
        }
        let val = |w: u64, z: u64| values[(w * a + z) as usize];
        let add = |x: u64, y: u64| self.add[(x * a + y) as usize];
        for z in 0..a {
            for z1 in 0..a {
                let zz1 = add(z, z1);
                for z2 in 0..a {
                    let lhs = val(z, z1) + val(zz1, z2);
                    let rhs = val(z, add(z1, z2)) + val(z1, z2);
                    if lhs % mv != rhs % mv {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Table code of the coboundary induced by the function with code
    /// `bcode` (base-m' digits over tuples).
    fn coboundary_code(&self, bcode: u64) -> u64 {
        let a = self.tuple_count;
        let mv = self.m_value;
        let mut b = vec![0u64; a as usize];
        let mut c = bcode;
        for slot in b.iter_mut() {
            *slot = c % mv;
            c /= mv;
        }
        let mut code = 0u64;
        // pair index w*a + z must be digit position w*a + z
        for pair in (0..self.domain).rev() {
            let (w, z) = (pair / a, pair % a);
            let v = (b[w as usize] + mv - b[self.add[(w * a + z) as usize] as usize]
                + b[z as usize])
                % mv;
            code = code * mv + v;
        }
        code
    }

    fn finish(&self, m: u64, dim: usize, cocycles: u64) -> Result<H2Report> {
        let mut seen = BTreeSet::new();
        let b_functions = (self.m_value as u128).pow(self.tuple_count as u32) as u64;
        for bcode in 0..b_functions {
            seen.insert(self.coboundary_code(bcode));
        }
        let coboundaries = seen.len() as u64;
        if !cocycles.is_multiple_of(coboundaries) {
            return Err(Error::InvariantViolated(format!(
                "coboundary count {coboundaries} does not divide cocycle count {cocycles}"
            )));
        }
        // every coboundary must itself be a cocycle
        for &code in &seen {
            if !self.is_cocycle(code) {
                return Err(Error::InvariantViolated(format!(
                    "coboundary table {code} fails the cocycle identity"
                )));
            }
        }
        Ok(H2Report {
            base_modulus: m,
            dim,
            value_modulus: self.m_value,
            domain: self.domain,
            tables: self.tables(),
            cocycles,
            coboundaries,
            h2_order: cocycles / coboundaries,
        })
    }
}

/// Exhaustive H^2 count; the table scan fans out over the worker pool.
pub fn h2_enumerate(m: u64, dim: usize, m_value: u64) -> Result<H2Report> {
    let scan = Scan::new(m, dim, m_value)?;
    let cocycles = exec::count_where(scan.tables(), |code| scan.is_cocycle(code));
    scan.finish(m, dim, cocycles)
}

/// Sequential twin of [`h2_enumerate`].
pub fn h2_enumerate_seq(m: u64, dim: usize, m_value: u64) -> Result<H2Report> {
    let scan = Scan::new(m, dim, m_value)?;
    let cocycles = exec::count_where_seq(scan.tables(), |code| scan.is_cocycle(code));
    scan.finish(m, dim, cocycles)
}
