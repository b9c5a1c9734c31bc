//! Porter stemming for words and phrases.
//!
//! Topic clustering and reference matching both operate on stem forms, so
//! the stemmer is part of the public surface. This is the original 1980
//! rule set (not Porter2/Snowball): step 2 maps `abli` to `able` and there
//! is no `logi` rule.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StemError {
    #[error("cannot stem an empty phrase")]
    EmptyPhrase,
}

/// A phrase reduced to its per-word stems, with a canonical joined form.
///
/// The joined form (stems separated by single spaces) is the identity used
/// for candidate merging, topic clustering and gold matching.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StemmedPhrase {
    stems: Vec<String>,
    joined: String,
}

impl StemmedPhrase {
    pub fn stems(&self) -> &[String] {
        &self.stems
    }

    pub fn joined(&self) -> &str {
        &self.joined
    }
}

/// Stem a single word: lowercase, then apply the Porter rules.
///
/// Words of length <= 2 (after lowercasing) are returned unchanged, per the
/// reference implementation. Non-alphabetic characters are treated as
/// consonants; where no rule fires the lowercased input passes through.
pub fn stem_word(word: &str) -> String {
    let lower = word.to_lowercase();
    if !lower.is_ascii() {
        return lower;
    }
    let mut p = Porter::new(lower.into_bytes());
    p.run();
    String::from_utf8(p.into_stem()).expect("stemmer operates on ASCII")
}

/// Stem every word of a phrase and build the canonical joined form.
pub fn stem_phrase<S: AsRef<str>>(words: &[S]) -> Result<StemmedPhrase, StemError> {
    if words.is_empty() {
        return Err(StemError::EmptyPhrase);
    }
    let stems: Vec<String> = words.iter().map(|w| stem_word(w.as_ref())).collect();
    let joined = stems.join(" ");
    Ok(StemmedPhrase { stems, joined })
}

// Straight port of Martin Porter's reference C implementation, restricted
// to the rules of the 1980 paper. b[0..=k] is the live word, j marks the
// stem end during suffix tests.
struct Porter {
    b: Vec<u8>,
    k: usize,
    // end of the stem during suffix tests; -1 when a suffix spans the word
    j: isize,
}

impl Porter {
    fn new(b: Vec<u8>) -> Self {
        let k = b.len().saturating_sub(1);
        Porter { b, k, j: 0 }
    }

    fn into_stem(mut self) -> Vec<u8> {
        self.b.truncate(self.k + 1);
        self.b
    }

    fn is_cons(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => {
                if i == 0 {
                    true
                } else {
                    !self.is_cons(i - 1)
                }
            }
            _ => true,
        }
    }

    // Number of VC sequences in b[0..=j].
    fn measure(&self) -> usize {
        let mut n = 0;
        let mut i: isize = 0;
        loop {
            if i > self.j {
                return n;
            }
            if !self.is_cons(i as usize) {
                break;
            }
            i += 1;
        }
        i += 1;
        loop {
            loop {
                if i > self.j {
                    return n;
                }
                if self.is_cons(i as usize) {
                    break;
                }
                i += 1;
            }
            i += 1;
            n += 1;
            loop {
                if i > self.j {
                    return n;
                }
                if !self.is_cons(i as usize) {
                    break;
                }
                i += 1;
            }
            i += 1;
        }
    }

    fn vowel_in_stem(&self) -> bool {
        (0..=self.j).any(|i| !self.is_cons(i as usize))
    }

    fn double_cons(&self, i: usize) -> bool {
        i >= 1 && self.b[i] == self.b[i - 1] && self.is_cons(i)
    }

    // Stem ends cvc where the final consonant is not w, x or y.
    fn cvc(&self, i: usize) -> bool {
        if i < 2 || !self.is_cons(i) || self.is_cons(i - 1) || !self.is_cons(i - 2) {
            return false;
        }
        !matches!(self.b[i], b'w' | b'x' | b'y')
    }

    fn ends(&mut self, s: &[u8]) -> bool {
        let len = s.len();
        if len > self.k + 1 {
            return false;
        }
        if &self.b[self.k + 1 - len..=self.k] != s {
            return false;
        }
        self.j = self.k as isize - len as isize;
        true
    }

    fn set_to(&mut self, s: &[u8]) {
        self.b.truncate((self.j + 1) as usize);
        self.b.extend_from_slice(s);
        self.k = (self.j + s.len() as isize) as usize;
    }

    fn replace_if_m(&mut self, s: &[u8]) {
        if self.measure() > 0 {
            self.set_to(s);
        }
    }

    fn step1ab(&mut self) {
        if self.b[self.k] == b's' {
            if self.ends(b"sses") {
                self.k -= 2;
            } else if self.ends(b"ies") {
                self.set_to(b"i");
            } else if self.k >= 1 && self.b[self.k - 1] != b's' {
                self.k -= 1;
            }
        }
        if self.ends(b"eed") {
            if self.measure() > 0 {
                self.k -= 1;
            }
        } else if (self.ends(b"ed") || self.ends(b"ing")) && self.vowel_in_stem() {
            self.k = self.j as usize;
            if self.ends(b"at") {
                self.set_to(b"ate");
            } else if self.ends(b"bl") {
                self.set_to(b"ble");
            } else if self.ends(b"iz") {
                self.set_to(b"ize");
            } else if self.double_cons(self.k) {
                self.k -= 1;
                if matches!(self.b[self.k], b'l' | b's' | b'z') {
                    self.k += 1;
                }
            } else {
                self.j = self.k as isize;
                if self.measure() == 1 && self.cvc(self.k) {
                    self.set_to(b"e");
                }
            }
        }
    }

    fn step1c(&mut self) {
        if self.ends(b"y") && self.vowel_in_stem() {
            self.b[self.k] = b'i';
        }
    }

    fn step2(&mut self) {
        if self.k == 0 {
            return;
        }
        const RULES: &[(&[u8], &[u8])] = &[
            (b"ational", b"ate"),
            (b"tional", b"tion"),
            (b"enci", b"ence"),
            (b"anci", b"ance"),
            (b"izer", b"ize"),
            (b"abli", b"able"),
            (b"alli", b"al"),
            (b"entli", b"ent"),
            (b"eli", b"e"),
            (b"ousli", b"ous"),
            (b"ization", b"ize"),
            (b"ation", b"ate"),
            (b"ator", b"ate"),
            (b"alism", b"al"),
            (b"iveness", b"ive"),
            (b"fulness", b"ful"),
            (b"ousness", b"ous"),
            (b"aliti", b"al"),
            (b"iviti", b"ive"),
            (b"biliti", b"ble"),
        ];
        for &(suffix, rep) in RULES {
            if self.ends(suffix) {
                self.replace_if_m(rep);
                return;
            }
        }
    }

    fn step3(&mut self) {
        const RULES: &[(&[u8], &[u8])] = &[
            (b"icate", b"ic"),
            (b"ative", b""),
            (b"alize", b"al"),
            (b"iciti", b"ic"),
            (b"ical", b"ic"),
            (b"ful", b""),
            (b"ness", b""),
        ];
        for &(suffix, rep) in RULES {
            if self.ends(suffix) {
                self.replace_if_m(rep);
                return;
            }
        }
    }

    fn step4(&mut self) {
        const SUFFIXES: &[&[u8]] = &[
            b"al", b"ance", b"ence", b"er", b"ic", b"able", b"ible", b"ant", b"ement", b"ment",
            b"ent", b"ion", b"ou", b"ism", b"ate", b"iti", b"ous", b"ive", b"ize",
        ];
        for &suffix in SUFFIXES {
            if self.ends(suffix) {
                // "ion" only deletes after s or t
                if suffix == b"ion"
                    && !(self.j >= 0 && matches!(self.b[self.j as usize], b's' | b't'))
                {
                    return;
                }
                if self.measure() > 1 {
                    self.k = self.j as usize;
                }
                return;
            }
        }
    }

    fn step5(&mut self) {
        self.j = self.k as isize;
        if self.b[self.k] == b'e' {
            let m = self.measure();
            if m > 1 || (m == 1 && !self.cvc(self.k - 1)) {
                self.k -= 1;
            }
        }
        if self.b[self.k] == b'l' && self.double_cons(self.k) {
            self.j = self.k as isize;
            if self.measure() > 1 {
                self.k -= 1;
            }
        }
    }

    fn run(&mut self) {
        if self.b.len() <= 2 {
            return;
        }
        self.step1ab();
        self.step1c();
        self.step2();
        self.step3();
        self.step4();
        self.step5();
    }
}
