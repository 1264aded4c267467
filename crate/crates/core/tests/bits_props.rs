use pemb::bits::{BitSequence, ParenSequence, RawBits};
use proptest::prelude::*;

/// A random balanced sequence: `choices[k]` decides open/close when both are legal.
fn balanced(choices: &[bool]) -> RawBits {
    let pairs = choices.len() / 2;
    let (mut opens, mut depth) = (0, 0);
    let mut out = RawBits::with_capacity(2 * pairs);
    for &c in choices.iter().take(2 * pairs) {
        let open = opens < pairs && (depth == 0 || c);
        out.push(!open);
        if open {
            opens += 1;
            depth += 1;
        } else {
            depth -= 1;
        }
    }
    out
}

fn stack_matches(bits: &RawBits) -> (Vec<usize>, Vec<usize>) {
    // 1-based match per position, parent node per node (0 for none)
    let mut mate = vec![0; bits.len() + 1];
    let mut parent = vec![0; bits.len() / 2 + 1];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut node = 0;
    for i in 1..=bits.len() {
        if !bits.get(i - 1) {
            node += 1;
            parent[node] = stack.last().map_or(0, |&(_, v)| v);
            stack.push((i, node));
        } else {
            let (open, _) = stack.pop().unwrap();
            mate[i] = open;
            mate[open] = i;
        }
    }
    (mate, parent)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_select_inverse(words in prop::collection::vec(any::<u64>(), 0..80), tail in 0usize..64, density in 0u8..4) {
        let len = (words.len() * 64).saturating_sub(tail);
        // thin out ones to exercise sparse select paths
        let words: Vec<u64> = words.iter().map(|&w| match density { 0 => w & w.rotate_left(7) & w.rotate_left(19), 1 => !w, _ => w }).collect();
        let raw = RawBits::from_words(words, len);
        let seq = BitSequence::build(raw.clone(), 3);
        let mut ones = 0;
        prop_assert_eq!(seq.rank1(0), 0);
        for i in 1..=len {
            if raw.get(i - 1) {
                ones += 1;
                prop_assert_eq!(seq.select1(ones), i);
            } else {
                prop_assert_eq!(seq.select0(i - ones), i);
            }
            prop_assert_eq!(seq.rank1(i), ones);
            prop_assert_eq!(seq.rank0(i), i - ones);
        }
        prop_assert_eq!(seq.select(true, ones + 1), None);
        prop_assert_eq!(seq.select1(0), 0);
        prop_assert_eq!(&seq, &BitSequence::build(raw, 1));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn parens_match_stack(choices in prop::collection::vec(any::<bool>(), 0..3000), threads in 1usize..9) {
        let raw = balanced(&choices);
        let (mate, parent) = stack_matches(&raw);
        let p = ParenSequence::build(raw.clone(), threads).unwrap();
        for i in 1..=raw.len() {
            prop_assert_eq!(p.find_match(i), Some(mate[i]));
        }
        for v in 1..=p.nodes() {
            prop_assert_eq!(p.parent(v), Some(parent[v]));
        }
        prop_assert_eq!(p, ParenSequence::build(raw, 1).unwrap());
    }

    #[test]
    fn unbalanced_is_rejected(choices in prop::collection::vec(any::<bool>(), 2..400), flip in any::<prop::sample::Index>()) {
        let mut raw = balanced(&choices);
        prop_assume!(!raw.is_empty());
        let k = flip.index(raw.len());
        let bit = raw.get(k);
        raw.set(k, !bit);
        prop_assert!(ParenSequence::build(raw, 2).is_err());
    }
}
