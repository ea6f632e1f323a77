//! Finite group presentations with meridian structure, the Wirtinger
//! presentation of a braid closure, and Tietze simplification.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// A finitely presented group `⟨x_1..x_g | r_1..r_m⟩`.
///
/// `exponents[i]` is the image of generator `i` under the abelianization
/// `π → Z = ⟨t⟩`; all zeros when the group carries no such map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
    meridian: Option<usize>,
    exponents: Vec<i64>,
}

impl Presentation {
    pub fn new(
        generator_count: usize,
        relators: Vec<Word>,
        meridian: Option<usize>,
        exponents: Vec<i64>,
    ) -> Result<Self> {
        if exponents.len() != generator_count {
            return Err(Error::Parse(format!(
                "{} exponents for {} generators",
                exponents.len(),
                generator_count
            )));
        }
        if let Some(m) = meridian {
            if m >= generator_count {
                return Err(Error::Parse(format!("meridian x{} out of range", m + 1)));
            }
            if exponents[m] != 1 {
                return Err(Error::Parse("meridian must have exponent 1".into()));
            }
        }
        for (k, r) in relators.iter().enumerate() {
            if let Some(l) = r.letters().iter().find(|l| l.generator >= generator_count) {
                return Err(Error::Parse(format!(
                    "relator {} uses x{} beyond {} generators",
                    k + 1,
                    l.generator + 1,
                    generator_count
                )));
            }
            if r.weighted_exponent_sum(&exponents) != 0 {
                return Err(Error::Parse(format!(
                    "relator {} has nonzero exponent weight",
                    k + 1
                )));
            }
        }
        Ok(Presentation { generator_count, relators, meridian, exponents })
    }

    /// A presentation without an abelianization map (all exponents zero).
    pub fn plain(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new(generator_count, relators, None, vec![0; generator_count])
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> Option<usize> {
        self.meridian
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generator_count as i64 - self.relators.len() as i64
    }

    pub fn exponent_sum(&self, w: &Word) -> i64 {
        w.weighted_exponent_sum(&self.exponents)
    }

    /// Every generator maps to 1 in the abelianization and the meridian is set.
    pub fn is_wirtinger_type(&self) -> bool {
        self.meridian.is_some() && self.exponents.iter().all(|&e| e == 1)
    }

    pub fn require_deficiency_one(&self) -> Result<()> {
        if self.deficiency() == 1 {
            Ok(())
        } else {
            Err(Error::WrongDeficiency {
                generators: self.generator_count,
                relators: self.relators.len(),
            })
        }
    }

    /// Wirtinger-style presentation of the closure of a braid on `strands` strands.
    ///
    /// Letters are `±i` for `σ_i^{±1}` (1-based). Generators are the strands'
    /// meridians `x_1..x_s`; relators are `x_i^{-1} β(x_i)` for `i < s`, the
    /// last one being redundant.
    pub fn wirtinger_from_braid(braid: &[i32], strands: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("at least one strand required".into()));
        }
        for &b in braid {
            if b == 0 || b.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {} invalid on {} strands",
                    b, strands
                )));
            }
        }
        let components = braid_components(braid, strands);
        if components != 1 {
            return Err(Error::NotAKnot { components });
        }
        let mut images: Vec<Word> = (0..strands).map(Word::generator).collect();
        for &b in braid {
            let i = b.unsigned_abs() as usize - 1;
            let action = |g: usize| -> Word {
                if b > 0 {
                    if g == i {
                        Word::new(vec![Letter::pos(i), Letter::pos(i + 1), Letter::neg(i)])
                    } else if g == i + 1 {
                        Word::generator(i)
                    } else {
                        Word::generator(g)
                    }
                } else if g == i {
                    Word::generator(i + 1)
                } else if g == i + 1 {
                    Word::new(vec![Letter::neg(i + 1), Letter::pos(i), Letter::pos(i + 1)])
                } else {
                    Word::generator(g)
                }
            };
            images = images.iter().map(|w| w.substitute(&action)).collect();
        }
        let relators = (0..strands - 1)
            .map(|i| Word::new(vec![Letter::neg(i)]).concat(&images[i]).free_reduce())
            .collect();
        Self::new(strands, relators, Some(0), vec![1; strands])
    }

    /// Tietze simplification.
    ///
    /// Each elimination step preserves deficiency; dropping a trivial or
    /// duplicate relator raises it, which cannot happen for a knot group
    /// (deficiency is at most 1 there). Repeatedly eliminates a generator occurring exactly once in some
    /// relator (solving that relator for it), then drops empty and duplicate
    /// relators. Generators listed in `protected` are never eliminated. The
    /// total relator length may grow to at most `growth_cap` times its initial
    /// value.
    pub fn simplify(&self, protected: &[usize], growth_cap: usize) -> Simplified {
        let g = self.generator_count;
        // expressions of every original generator in terms of original generators
        let mut expr: Vec<Option<Word>> = vec![None; g];
        let mut alive: Vec<bool> = vec![true; g];
        let mut rels: Vec<Word> = self.relators.iter().map(Word::cyclic_reduce).collect();
        dedupe_relators(&mut rels);
        let cap = rels.iter().map(Word::len).sum::<usize>().max(1) * growth_cap.max(1);

        loop {
            let total: usize = rels.iter().map(Word::len).sum();
            let mut best: Option<(i64, usize, usize)> = None; // (new total, relator, generator)
            for (ri, r) in rels.iter().enumerate() {
                for gen in r.support() {
                    if protected.contains(&gen) || r.occurrences(gen) != 1 {
                        continue;
                    }
                    let others: usize = rels
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != ri)
                        .map(|(_, w)| w.occurrences(gen))
                        .sum();
                    let new_total =
                        total as i64 - r.len() as i64 + others as i64 * (r.len() as i64 - 2);
                    if best.is_none_or(|(t, _, _)| new_total < t) {
                        best = Some((new_total, ri, gen));
                    }
                }
            }
            let Some((new_total, ri, gen)) = best else { break };
            if new_total > cap as i64 {
                break;
            }
            let r = rels.remove(ri);
            let value = solve_for(&r, gen);
            let subst = |x: usize| if x == gen { value.clone() } else { Word::generator(x) };
            for w in rels.iter_mut() {
                *w = w.substitute(&subst).cyclic_reduce();
            }
            for e in expr.iter_mut().flatten() {
                *e = e.substitute(&subst);
            }
            expr[gen] = Some(value);
            alive[gen] = false;
            dedupe_relators(&mut rels);
        }

        let kept: Vec<usize> = (0..g).filter(|&i| alive[i]).collect();
        let mut new_index = vec![usize::MAX; g];
        for (k, &old) in kept.iter().enumerate() {
            new_index[old] = k;
        }
        let rename = |x: usize| Word::generator(new_index[x]);
        let relators: Vec<Word> = rels.iter().map(|w| w.substitute(&rename)).collect();
        let expressions: Vec<Word> = (0..g)
            .map(|i| match &expr[i] {
                Some(w) => w.substitute(&rename),
                None => Word::generator(new_index[i]),
            })
            .collect();
        let exponents = kept.iter().map(|&i| self.exponents[i]).collect();
        let meridian = self.meridian.filter(|m| alive[*m]).map(|m| new_index[m]);
        let presentation = Presentation {
            generator_count: kept.len(),
            relators,
            meridian,
            exponents,
        };
        Simplified { presentation, kept, expressions }
    }

    /// Parses the line-oriented presentation format:
    ///
    /// ```text
    /// generators: 2
    /// relator: x1 x2 x1 X2 X1 X2
    /// meridian: 1
    /// exponents: 1 1
    /// genus: 1
    /// ```
    ///
    /// `meridian`, `exponents` and `genus` are optional; `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<(Presentation, Option<u32>)> {
        let mut gens: Option<usize> = None;
        let mut relators = Vec::new();
        let mut meridian = None;
        let mut exponents: Option<Vec<i64>> = None;
        let mut genus = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{}`", line)))?;
            let value = value.trim();
            let int = |v: &str| -> Result<i64> {
                v.parse().map_err(|_| Error::Parse(format!("bad integer `{}`", v)))
            };
            match key.trim() {
                "generators" => gens = Some(int(value)? as usize),
                "relator" => relators.push(value.parse::<Word>()?),
                "meridian" => {
                    let m = int(value)?;
                    if m < 1 {
                        return Err(Error::Parse("meridian index starts at 1".into()));
                    }
                    meridian = Some(m as usize - 1);
                }
                "exponents" => {
                    exponents = Some(
                        value
                            .split(|c: char| c == ',' || c.is_whitespace())
                            .filter(|s| !s.is_empty())
                            .map(int)
                            .collect::<Result<_>>()?,
                    )
                }
                "genus" => genus = Some(int(value)? as u32),
                other => return Err(Error::Parse(format!("unknown key `{}`", other))),
            }
        }
        let g = gens.ok_or_else(|| Error::Parse("missing `generators`".into()))?;
        let exponents = exponents.unwrap_or_else(|| vec![0; g]);
        Ok((Presentation::new(g, relators, meridian, exponents)?, genus))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("generators: {}\n", self.generator_count);
        for r in &self.relators {
            s.push_str(&format!("relator: {}\n", r));
        }
        if let Some(m) = self.meridian {
            s.push_str(&format!("meridian: {}\n", m + 1));
        }
        let ex: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        s.push_str(&format!("exponents: {}\n", ex.join(" ")));
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "⟨{} generators | {}⟩", self.generator_count, rels.join(", "))
    }
}

/// Result of [`Presentation::simplify`].
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Original index of each surviving generator.
    pub kept: Vec<usize>,
    /// Each original generator as a word in the surviving generators.
    pub expressions: Vec<Word>,
}

/// Number of link components of a braid closure.
pub fn braid_components(braid: &[i32], strands: usize) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &b in braid {
        let i = b.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for s in 0..strands {
        if !seen[s] {
            cycles += 1;
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = perm[c];
            }
        }
    }
    cycles
}

fn solve_for(r: &Word, gen: usize) -> Word {
    let letters = r.letters();
    let pos = letters.iter().position(|l| l.generator == gen).unwrap();
    // rotate so the letter comes first: r ~ g^e u
    let mut u: Vec<Letter> = letters[pos + 1..].to_vec();
    u.extend_from_slice(&letters[..pos]);
    let u = Word::new(u);
    if letters[pos].inverse {
        u
    } else {
        u.inverse()
    }
}

fn dedupe_relators(rels: &mut Vec<Word>) {
    let mut seen = HashSet::new();
    rels.retain(|r| !r.is_empty() && seen.insert(r.cyclic_key()));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_from_trivial_braid() {
        let p = Presentation::wirtinger_from_braid(&[], 1).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
        assert_eq!(p.deficiency(), 1);
    }

    #[test]
    fn trefoil_braid() {
        let p = Presentation::wirtinger_from_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators().len(), 1);
        assert!(p.is_wirtinger_type());
        assert_eq!(p.exponent_sum(&p.relators()[0]), 0);
    }

    #[test]
    fn links_rejected() {
        assert_eq!(
            Presentation::wirtinger_from_braid(&[1, 1], 2),
            Err(Error::NotAKnot { components: 2 })
        );
        assert!(Presentation::wirtinger_from_braid(&[3], 3).is_err());
        assert!(Presentation::wirtinger_from_braid(&[0], 2).is_err());
    }

    #[test]
    fn every_relator_has_weight_zero() {
        for (b, s) in [(vec![1, -2, 1, -2], 3), (vec![1, 1, 2, -1, -3, 2, -3], 4)] {
            let p = Presentation::wirtinger_from_braid(&b, s).unwrap();
            assert_eq!(p.deficiency(), 1);
            for r in p.relators() {
                assert_eq!(p.exponent_sum(r), 0);
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        let p = Presentation::wirtinger_from_braid(&[1, -2, 1, -2], 3).unwrap();
        let (q, genus) = Presentation::parse_text(&p.to_text()).unwrap();
        assert_eq!(p, q);
        assert_eq!(genus, None);
        let (r, genus) =
            Presentation::parse_text("generators: 2\nrelator: x1 x2 x1 X2 X1 X2\nmeridian: 1\nexponents: 1, 1\ngenus: 1\n")
                .unwrap();
        assert_eq!(r.generator_count(), 2);
        assert_eq!(genus, Some(1));
        assert!(Presentation::parse_text("generators: 1\nrelator: x1\nexponents: 1\n").is_err());
        assert!(Presentation::parse_text("relator: x1\n").is_err());
    }

    #[test]
    fn simplify_trivial_relators() {
        let p = Presentation::plain(3, vec!["x1".parse().unwrap(), "x2 x3 X1".parse().unwrap()])
            .unwrap();
        let s = p.simplify(&[], 4);
        assert_eq!(s.presentation.generator_count(), 1);
        assert!(s.presentation.relators().is_empty());
        assert_eq!(s.expressions[0], Word::empty());
    }

    #[test]
    fn simplify_keeps_deficiency() {
        let p = Presentation::wirtinger_from_braid(&[1, -2, 1, -2], 3).unwrap();
        let s = p.simplify(&[0], 8);
        assert_eq!(s.presentation.deficiency(), 1);
        assert!(s.presentation.generator_count() < 3);
        assert_eq!(s.presentation.meridian(), Some(0));
        for r in s.presentation.relators() {
            assert_eq!(s.presentation.exponent_sum(r), 0);
        }
    }
}
