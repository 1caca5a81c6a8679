//! Suffix automaton over a small alphabet, with per-length factor counts
//! recorded while the word is read.

const NONE: u32 = u32::MAX;

/// Suffix automaton of a word over letters `0..alphabet`.
pub struct SuffixAutomaton {
    alphabet: usize,
    len: Vec<u32>,
    link: Vec<u32>,
    /// end position (0-based) of the first occurrence of the state's strings
    first_end: Vec<u32>,
    next: Vec<u32>,
    last: u32,
}

impl SuffixAutomaton {
    pub fn with_capacity(alphabet: usize, word_len: usize) -> Self {
        let cap = 2 * word_len.max(1);
        let mut sam = Self {
            alphabet,
            len: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            first_end: Vec::with_capacity(cap),
            next: Vec::with_capacity(cap * alphabet),
            last: 0,
        };
        sam.push_state(0, NONE, NONE);
        sam
    }

    fn push_state(&mut self, len: u32, link: u32, first_end: u32) -> u32 {
        let id = self.len.len() as u32;
        self.len.push(len);
        self.link.push(link);
        self.first_end.push(first_end);
        self.next.extend(std::iter::repeat_n(NONE, self.alphabet));
        id
    }

    #[inline]
    fn trans(&self, state: u32, c: usize) -> u32 {
        self.next[state as usize * self.alphabet + c]
    }

    #[inline]
    fn set_trans(&mut self, state: u32, c: usize, to: u32) {
        self.next[state as usize * self.alphabet + c] = to;
    }

    /// Appends a letter; returns the length range `(lo, hi]` of the factors
    /// that occur for the first time, all of them suffixes of the new prefix.
    pub fn extend(&mut self, c: usize, pos: u32) -> (u32, u32) {
        let cur = self.push_state(self.len[self.last as usize] + 1, NONE, pos);
        let mut p = self.last;
        while p != NONE && self.trans(p, c) == NONE {
            self.set_trans(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.trans(p, c);
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone =
                    self.push_state(self.len[p as usize] + 1, self.link[q as usize], self.first_end[q as usize]);
                let a = self.alphabet;
                let (src, dst) = (q as usize * a, clone as usize * a);
                self.next.copy_within(src..src + a, dst);
                while p != NONE && self.trans(p, c) == q {
                    self.set_trans(p, c, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
        (self.len[self.link[cur as usize] as usize], self.len[cur as usize])
    }

    pub fn state_count(&self) -> usize {
        self.len.len()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub(crate) fn state_len(&self, s: usize) -> u32 {
        self.len[s]
    }

    pub(crate) fn state_link(&self, s: usize) -> Option<usize> {
        let l = self.link[s];
        (l != NONE).then_some(l as usize)
    }

    pub(crate) fn state_first_end(&self, s: usize) -> u32 {
        self.first_end[s]
    }

    /// Bitmask of the letters labelling outgoing transitions.
    pub(crate) fn out_mask(&self, s: usize) -> u32 {
        let row = &self.next[s * self.alphabet..(s + 1) * self.alphabet];
        row.iter().enumerate().fold(0, |m, (c, &t)| if t != NONE { m | (1 << c) } else { m })
    }
}
