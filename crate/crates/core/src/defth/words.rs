use std::collections::HashMap;

/// A degree-one generator of the free matric algebra, sitting in position `(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub source: usize,
    pub target: usize,
    /// Index within the `Ext^1(M_source, M_target)` basis.
    pub index: usize,
    pub label: String,
}

/// A composable word `t_{i i_1} t_{i_1 i_2} ... t_{i_{s-1} j}`; the empty word at `i` is `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub gens: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl Word {
    pub fn degree(&self) -> usize {
        self.gens.len()
    }
}

/// All composable words of degree at most `max_degree`, ordered by degree and then
/// lexicographically in generator indices.
#[derive(Clone, Debug)]
pub struct WordSet {
    pub generators: Vec<Generator>,
    pub words: Vec<Word>,
    pub max_degree: usize,
    lookup: HashMap<(usize, Vec<usize>), usize>,
    /// Elimination layout: higher degree first, so normal forms prefer low-degree monomials.
    col_of: Vec<usize>,
    word_of_col: Vec<usize>,
}

impl WordSet {
    pub fn new(r: usize, generators: Vec<Generator>, max_degree: usize) -> WordSet {
        let mut words: Vec<Word> = (0..r).map(|i| Word { gens: Vec::new(), source: i, target: i }).collect();
        let mut frontier: Vec<Word> = Vec::new();
        for d in 1..=max_degree {
            let next: Vec<Word> = if d == 1 {
                generators
                    .iter()
                    .enumerate()
                    .map(|(g, gen)| Word { gens: vec![g], source: gen.source, target: gen.target })
                    .collect()
            } else {
                frontier
                    .iter()
                    .flat_map(|w| {
                        generators.iter().enumerate().filter(|(_, gen)| gen.source == w.target).map(|(g, gen)| {
                            let mut gens = w.gens.clone();
                            gens.push(g);
                            Word { gens, source: w.source, target: gen.target }
                        })
                    })
                    .collect()
            };
            if next.is_empty() {
                break;
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let lookup = words.iter().enumerate().map(|(k, w)| ((w.source, w.gens.clone()), k)).collect();
        let mut word_of_col: Vec<usize> = (0..words.len()).collect();
        word_of_col.sort_by_key(|&w| (std::cmp::Reverse(words[w].degree()), w));
        let mut col_of = vec![0; words.len()];
        for (c, &w) in word_of_col.iter().enumerate() {
            col_of[w] = c;
        }
        WordSet { generators, words, max_degree, lookup, col_of, word_of_col }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, w: usize) -> &Word {
        &self.words[w]
    }

    pub fn idempotent(&self, i: usize) -> usize {
        i
    }

    pub fn col(&self, w: usize) -> usize {
        self.col_of[w]
    }

    pub fn word_at_col(&self, c: usize) -> usize {
        self.word_of_col[c]
    }

    /// `u v`, or `None` when not composable or beyond the truncation degree.
    pub fn concat(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (&self.words[u], &self.words[v]);
        if a.target != b.source {
            return None;
        }
        if a.gens.is_empty() {
            return Some(v);
        }
        if b.gens.is_empty() {
            return Some(u);
        }
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        self.lookup.get(&(a.source, gens)).copied()
    }

    pub fn label(&self, w: usize) -> String {
        let word = &self.words[w];
        if word.gens.is_empty() {
            format!("e{}", word.source + 1)
        } else {
            word.gens.iter().map(|&g| self.generators[g].label.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}
