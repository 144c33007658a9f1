use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use super::search::{eps_search_dim3, eps_search_general};
use crate::error::{Error, Result};

/// Exhaustive epsilon-search run over the normalized lens family in one
/// dimension, up to a bound on `q_1 + ... + q_n + p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub dimension: usize,
    pub max_sum: u64,
    /// `sum -> (tuples, failures)`
    pub per_sum: BTreeMap<u64, (u64, u64)>,
    /// Failing `(q, p)`, sorted by sum, then `p`, then `q`.
    pub failures: Vec<(Vec<u64>, u64)>,
}

impl SurveyReport {
    /// Largest `m` such that every sum up to `m` passed.
    pub fn bound(&self) -> u64 {
        self.failures
            .iter()
            .map(|(q, p)| q.iter().sum::<u64>() + p - 1)
            .min()
            .unwrap_or(self.max_sum)
    }

    pub fn total_tuples(&self) -> u64 {
        self.per_sum.values().map(|&(t, _)| t).sum()
    }

    /// Reruns the search on each listed failure; true iff all still fail.
    pub fn recheck(&self) -> Result<bool> {
        for (q, p) in &self.failures {
            if tuple_passes(q, *p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SurveyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# dimension {} max-sum {}", self.dimension, self.max_sum)?;
        writeln!(f, "sum\ttuples\tfailures")?;
        for (s, (t, k)) in &self.per_sum {
            writeln!(f, "{s}\t{t}\t{k}")?;
        }
        writeln!(f, "tuples: {}", self.total_tuples())?;
        writeln!(f, "failures: {}", self.failures.len())?;
        writeln!(f, "bound: {}", self.bound())?;
        for (q, p) in &self.failures {
            let q: Vec<String> = q.iter().map(ToString::to_string).collect();
            writeln!(f, "fail: {},{p}", q.join(","))?;
        }
        Ok(())
    }
}

fn tuple_passes(q: &[u64], p: u64) -> Result<bool> {
    let qb: Vec<BigInt> = q.iter().map(|&x| BigInt::from(x)).collect();
    let pb = BigInt::from(p);
    let hit = if q.len() == 2 {
        eps_search_dim3(&qb[0], &qb[1], &pb)?
    } else {
        eps_search_general(&qb, &pb)?
    };
    Ok(hit.is_some())
}

/// Calls `visit` on every non-decreasing `q` in `[1, p)` of length `n`,
/// coprime to `p`, with `sum(q) <= budget`.
fn for_each_tuple(
    p: u64,
    n: usize,
    budget: u64,
    visit: &mut dyn FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    fn rec(
        p: u64,
        n: usize,
        lo: u64,
        budget: u64,
        cur: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[u64]) -> Result<()>,
    ) -> Result<()> {
        if cur.len() == n {
            return visit(cur);
        }
        let left = (n - cur.len()) as u64;
        let mut x = lo;
        // the remaining entries are all at least x
        while x < p && x * left <= budget {
            if x.gcd(&p) == 1 {
                cur.push(x);
                rec(p, n, x, budget - x, cur, visit)?;
                cur.pop();
            }
            x += 1;
        }
        Ok(())
    }
    rec(p, n, 1, budget, &mut Vec::with_capacity(n), visit)
}

type Partial = (BTreeMap<u64, (u64, u64)>, Vec<(Vec<u64>, u64)>);

fn survey_worker(n: usize, max_sum: u64, jobs: u64, id: u64) -> Result<Partial> {
    let mut per_sum = BTreeMap::new();
    let mut failures = Vec::new();
    let mut p = 2 + id;
    while p + n as u64 <= max_sum {
        for_each_tuple(p, n, max_sum - p, &mut |q| {
            let s = q.iter().sum::<u64>() + p;
            let entry = per_sum.entry(s).or_insert((0, 0));
            entry.0 += 1;
            if !tuple_passes(q, p)? {
                entry.1 += 1;
                failures.push((q.to_vec(), p));
            }
            Ok(())
        })?;
        p += jobs;
    }
    Ok((per_sum, failures))
}

/// Enumerates the family with `sum <= max_sum` over `jobs` threads; the
/// result does not depend on `jobs`.
pub fn survey(n: usize, max_sum: u64, jobs: usize) -> Result<SurveyReport> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "survey needs dimension >= 2, got {n}"
        )));
    }
    if max_sum < 3 {
        return Err(Error::Precondition(format!(
            "max-sum must be at least 3, got {max_sum}"
        )));
    }
    let jobs = jobs.max(1) as u64;
    let parts: Vec<Result<Partial>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|id| scope.spawn(move || survey_worker(n, max_sum, jobs, id)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("survey worker panicked"))
            .collect()
    });

    let mut per_sum: BTreeMap<u64, (u64, u64)> =
        (n as u64 + 2..=max_sum).map(|s| (s, (0, 0))).collect();
    let mut failures = Vec::new();
    for part in parts {
        let (counts, fails) = part?;
        for (s, (t, k)) in counts {
            let e = per_sum.entry(s).or_insert((0, 0));
            e.0 += t;
            e.1 += k;
        }
        failures.extend(fails);
    }
    failures.sort_by(|(qa, pa), (qb, pb)| {
        let sa = qa.iter().sum::<u64>() + pa;
        let sb = qb.iter().sum::<u64>() + pb;
        (sa, pa, qa).cmp(&(sb, pb, qb))
    });
    Ok(SurveyReport {
        dimension: n,
        max_sum,
        per_sum,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_survey() {
        let r = survey(2, 4, 1).unwrap();
        assert_eq!(r.total_tuples(), 1);
        assert_eq!(r.per_sum[&4], (1, 0));
        assert!(r.failures.is_empty());
        assert_eq!(r.bound(), 4);
    }

    #[test]
    fn counts_match_direct_enumeration() {
        let r = survey(2, 30, 3).unwrap();
        let mut direct = 0;
        for p in 2u64..30 {
            for q1 in 1..p {
                for q2 in q1..p {
                    if q1 + q2 + p <= 30 && q1.gcd(&p) == 1 && q2.gcd(&p) == 1 {
                        direct += 1;
                    }
                }
            }
        }
        assert_eq!(r.total_tuples(), direct);
    }

    #[test]
    fn jobs_do_not_change_output() {
        let a = survey(3, 16, 1).unwrap();
        for jobs in [2, 3, 7] {
            let b = survey(3, 16, jobs).unwrap();
            assert_eq!(a.to_string(), b.to_string());
        }
    }

    #[test]
    fn failures_recheck() {
        let r = survey(3, 20, 2).unwrap();
        assert!(r.recheck().unwrap());
        if let Some((q, p)) = r.failures.first() {
            assert_eq!(r.bound(), q.iter().sum::<u64>() + p - 1);
        }
    }

    #[test]
    fn preconditions() {
        assert!(survey(1, 10, 1).is_err());
        assert!(survey(2, 2, 1).is_err());
    }

    #[test]
    fn bound_from_failures() {
        let mut r = survey(2, 10, 1).unwrap();
        r.failures = vec![(vec![2, 3], 5), (vec![1, 1], 9)];
        assert_eq!(r.bound(), 9);
    }
}
