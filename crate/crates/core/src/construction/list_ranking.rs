//! Parallel list ranking by sublist sampling.
//!
//! The list is cut at `8 * threads` evenly spaced entries plus the true head.
//! Each sublist is walked independently, turning its weights into local
//! inclusive sums; a short sequential pass over the sublists in list order
//! produces each sublist's offset; a second parallel walk adds the offsets.

use super::EulerEntry;
use crate::bits::{AtomicBits, RawBits};
use crate::error::BuildError;
use crate::par::{DisjointSlice, Executor};

/// Replaces `rank_a`/`rank_b` weights with inclusive prefix sums along the
/// list that starts at `head` and follows `succ` (the cycle is cut just
/// before `head`).
pub fn list_ranking(
    entries: &mut [EulerEntry],
    head: usize,
    threads: usize,
) -> Result<(), BuildError> {
    let exec = Executor::new(threads);
    list_ranking_with(&exec, entries, head)
}

pub(crate) fn list_ranking_with(
    exec: &Executor,
    entries: &mut [EulerEntry],
    head: usize,
) -> Result<(), BuildError> {
    let len = entries.len();
    if len == 0 {
        return Ok(());
    }
    if head >= len {
        return Err(BuildError::NotSingleCycle(format!(
            "head {head} out of range"
        )));
    }
    check_permutation(exec, entries)?;

    let samples = (8 * exec.threads()).min(len);
    let mut heads: Vec<u32> = (0..samples).map(|k| (k * len / samples) as u32).collect();
    heads.push(head as u32);
    heads.sort_unstable();
    heads.dedup();
    let mut is_head = RawBits::zeros(len);
    for &h in &heads {
        is_head.set(h as usize, true);
    }
    let sublist_of = |pos: u32| {
        heads
            .binary_search(&pos)
            .expect("position is a sublist head")
    };

    // per sublist: (total a, total b, length, index of the following sublist)
    let mut summary = vec![(0u64, 0u64, 0usize, 0usize); heads.len()];
    {
        let cells = DisjointSlice::new(entries);
        let out = DisjointSlice::new(&mut summary);
        exec.for_chunks(heads.len(), |_, range| {
            for s in range {
                let (mut sum_a, mut sum_b, mut count) = (0u64, 0u64, 0usize);
                let mut cur = heads[s] as usize;
                let next = loop {
                    // SAFETY: in a single-cycle permutation every entry lies on
                    // exactly one sublist, so walks touch disjoint entries.
                    let e = unsafe { cells.get_mut(cur) };
                    sum_a += e.rank_a as u64;
                    sum_b += e.rank_b as u64;
                    e.rank_a = sum_a as u32;
                    e.rank_b = sum_b as u32;
                    count += 1;
                    cur = e.succ as usize;
                    if is_head.get(cur) {
                        break sublist_of(cur as u32);
                    }
                };
                // SAFETY: one writer per sublist.
                unsafe { *out.get_mut(s) = (sum_a, sum_b, count, next) };
            }
        });
    }

    let mut offsets = vec![(0u32, 0u32); heads.len()];
    let first = sublist_of(head as u32);
    let (mut off_a, mut off_b, mut covered) = (0u64, 0u64, 0usize);
    let mut s = first;
    loop {
        offsets[s] = (off_a as u32, off_b as u32);
        let (a, b, count, next) = summary[s];
        off_a += a;
        off_b += b;
        covered += count;
        s = next;
        if s == first || covered > len {
            break;
        }
    }
    if covered != len {
        return Err(BuildError::NotSingleCycle(format!(
            "list from head {head} covers {covered} of {len} entries"
        )));
    }
    if off_a > u32::MAX as u64 || off_b > u32::MAX as u64 {
        return Err(BuildError::NotSingleCycle("rank overflow".into()));
    }

    let cells = DisjointSlice::new(entries);
    exec.for_chunks(heads.len(), |_, range| {
        for s in range {
            let (da, db) = offsets[s];
            if da == 0 && db == 0 {
                continue;
            }
            let mut cur = heads[s] as usize;
            for _ in 0..summary[s].2 {
                // SAFETY: same partition as the first walk.
                let e = unsafe { cells.get_mut(cur) };
                e.rank_a += da;
                e.rank_b += db;
                cur = e.succ as usize;
            }
        }
    });
    Ok(())
}

fn check_permutation(exec: &Executor, entries: &[EulerEntry]) -> Result<(), BuildError> {
    let len = entries.len();
    let hit = AtomicBits::zeros(len);
    let bad = exec.map_chunks(len, |range| {
        for j in range {
            let s = entries[j].succ as usize;
            if s >= len {
                return Some(format!("entry {j} points outside the list ({s})"));
            }
            if !hit.test_and_set(s) {
                return Some(format!("entry {s} has two predecessors"));
            }
        }
        None
    });
    match bad.into_iter().flatten().next() {
        Some(msg) => Err(BuildError::NotSingleCycle(msg)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(succ: usize, a: u32, b: u32) -> EulerEntry {
        EulerEntry {
            value: false,
            succ: succ as u32,
            rank_a: a,
            rank_b: b,
        }
    }

    /// Sequential pointer walk.
    fn walk(entries: &[EulerEntry], head: usize) -> Vec<(u32, u32)> {
        let mut out = vec![(0, 0); entries.len()];
        let (mut a, mut b, mut cur) = (0, 0, head);
        for _ in 0..entries.len() {
            a += entries[cur].rank_a;
            b += entries[cur].rank_b;
            out[cur] = (a, b);
            cur = entries[cur].succ as usize;
        }
        out
    }

    #[test]
    fn single_entry() {
        let mut e = vec![entry(0, 1, 1)];
        list_ranking(&mut e, 0, 4).unwrap();
        assert_eq!((e[0].rank_a, e[0].rank_b), (1, 1));
    }

    #[test]
    fn chain_of_five() {
        // 3 -> 0 -> 4 -> 1 -> 2 -> 3
        let order = [3usize, 0, 4, 1, 2];
        let mut e = vec![entry(0, 1, 1); 5];
        for w in 0..5 {
            e[order[w]].succ = order[(w + 1) % 5] as u32;
        }
        list_ranking(&mut e, 3, 2).unwrap();
        let ranks: Vec<u32> = order.iter().map(|&k| e[k].rank_b).collect();
        assert_eq!(ranks, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn rejects_two_cycles() {
        let mut e = vec![
            entry(1, 1, 1),
            entry(0, 1, 1),
            entry(3, 1, 1),
            entry(2, 1, 1),
        ];
        assert!(matches!(
            list_ranking(&mut e, 0, 1),
            Err(BuildError::NotSingleCycle(_))
        ));
        let mut e = vec![entry(1, 1, 1), entry(1, 1, 1)];
        assert!(matches!(
            list_ranking(&mut e, 0, 2),
            Err(BuildError::NotSingleCycle(_))
        ));
    }

    #[test]
    fn random_cycle_matches_walk() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let len = 20_000;
        let mut order: Vec<usize> = (0..len).collect();
        order.shuffle(&mut rng);
        let mut base = vec![entry(0, 0, 0); len];
        for w in 0..len {
            base[order[w]] = entry(order[(w + 1) % len], rng.gen_range(1..5), 1);
        }
        let expect = walk(&base, order[0]);
        for threads in [1, 2, 4, 8] {
            let mut e = base.clone();
            list_ranking(&mut e, order[0], threads).unwrap();
            let got: Vec<(u32, u32)> = e.iter().map(|x| (x.rank_a, x.rank_b)).collect();
            assert_eq!(got, expect, "threads {threads}");
        }
    }
}
