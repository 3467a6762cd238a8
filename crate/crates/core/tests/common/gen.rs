//! Random sentences, kept both as source text and as an oracle proposition
//! built without going through the parser.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinpa::{Rational, RawTerm};

use super::brute::{Prop, Rel};

pub struct Term {
    pub raw: RawTerm,
    pub text: String,
}

pub struct Sentence {
    pub text: String,
    pub prop: Prop,
    pub arity: usize,
}

pub struct Gen {
    pub rng: ChaCha8Rng,
    pub arity: usize,
    pub max_arity: usize,
    pub max_depth: u32,
    pub max_num: i64,
    pub max_den: i64,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            arity: 2,
            max_arity: 2,
            max_depth: 2,
            max_num: 5,
            max_den: 4,
        }
    }

    pub fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    fn coeff(&mut self) -> (Rational, String) {
        let mut num = 0;
        while num == 0 {
            num = self.rng.gen_range(-self.max_num..=self.max_num);
        }
        let den = self.rng.gen_range(1..=self.max_den);
        let q = Rational::from((num, den));
        let text = if *q.denom() == 1 {
            format!("({})", q.numer())
        } else {
            format!("({}/{})", q.numer(), q.denom())
        };
        (q, text)
    }

    fn var(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn scaled(q: Rational, t: RawTerm) -> RawTerm {
        RawTerm::scale(q, t)
    }

    /// A sum of one to three pieces with sine depth at most `depth`, over
    /// the first `n` variables.
    pub fn term_in(&mut self, n: usize, depth: u32) -> Term {
        let pieces = self.rng.gen_range(1..=3);
        let mut raws = Vec::new();
        let mut texts = Vec::new();
        for i in 0..pieces {
            let (q, qt) = self.coeff();
            let roll = self.rng.gen_range(0..10);
            if depth > 0 && (roll < 4 || (i == 0 && roll < 6)) {
                let inner_depth = self.rng.gen_range(0..depth);
                let inner = self.term_in(n, inner_depth);
                raws.push(Gen::scaled(q, RawTerm::sin(inner.raw)));
                texts.push(format!("{qt}*sin({})", inner.text));
            } else if roll < 8 && n > 0 {
                let v = self.var(n);
                raws.push(Gen::scaled(q, RawTerm::var(v)));
                texts.push(format!("{qt}*x{v}"));
            } else {
                raws.push(RawTerm::Const(q));
                texts.push(qt);
            }
        }
        Term {
            raw: RawTerm::Sum(raws),
            text: texts.join(" + "),
        }
    }

    pub fn term(&mut self, depth: u32) -> Term {
        self.term_in(self.arity, depth)
    }

    /// Integer-coefficient affine term for `div`.
    pub fn affine_int(&mut self) -> Term {
        let mut raws = Vec::new();
        let mut texts = Vec::new();
        for v in 0..self.arity {
            let c = self.rng.gen_range(-3i64..=3);
            if c != 0 {
                raws.push(RawTerm::scale(c, RawTerm::var(v)));
                texts.push(format!("({c})*x{v}"));
            }
        }
        let c = self.rng.gen_range(-3i64..=3);
        raws.push(RawTerm::constant(c));
        texts.push(format!("({c})"));
        Term {
            raw: RawTerm::Sum(raws),
            text: texts.join(" + "),
        }
    }

    fn depth(&mut self) -> u32 {
        self.rng.gen_range(0..=self.max_depth)
    }

    /// One comparison or divisibility atom.
    pub fn atom(&mut self) -> (Prop, String) {
        let ops = ["<", "<", "<", "<=", ">", ">=", "=", "!=", "div"];
        let op = *ops.choose(&mut self.rng).unwrap();
        if op == "div" {
            let k = self.rng.gen_range(2i64..=4);
            let t = self.affine_int();
            return (
                Prop::raw(Rel::Divides(k), t.raw),
                format!("div({k}, {})", t.text),
            );
        }
        let (d1, d2) = (self.depth(), self.depth());
        let a = self.term(d1);
        let b = self.term(d2);
        let text = format!("{} {op} {}", a.text, b.text);
        let diff = |x: &RawTerm, y: &RawTerm| x.clone() - y.clone();
        let prop = match op {
            "<" => Prop::raw(Rel::Pos, diff(&b.raw, &a.raw)),
            ">" => Prop::raw(Rel::Pos, diff(&a.raw, &b.raw)),
            "<=" => Prop::Not(Box::new(Prop::raw(Rel::Pos, diff(&a.raw, &b.raw)))),
            ">=" => Prop::Not(Box::new(Prop::raw(Rel::Pos, diff(&b.raw, &a.raw)))),
            "=" => Prop::raw(Rel::Zero, diff(&a.raw, &b.raw)),
            "!=" => Prop::raw(Rel::NonZero, diff(&a.raw, &b.raw)),
            _ => unreachable!(),
        };
        (prop, text)
    }

    fn literal(&mut self) -> (Prop, String) {
        let (p, t) = self.atom();
        if self.rng.gen_bool(0.1) {
            (Prop::Not(Box::new(p)), format!("not ({t})"))
        } else {
            (p, t)
        }
    }

    /// A conjunction of one to three literals, one of which may be a
    /// two-way disjunction.
    pub fn matrix(&mut self) -> (Prop, String) {
        let count = self.rng.gen_range(1..=3);
        let mut props = Vec::new();
        let mut texts = Vec::new();
        for _ in 0..count {
            if self.rng.gen_bool(0.15) {
                let (p1, t1) = self.literal();
                let (p2, t2) = self.literal();
                props.push(Prop::Or(vec![p1, p2]));
                texts.push(format!("({t1} or {t2})"));
            } else {
                let (p, t) = self.literal();
                props.push(p);
                texts.push(t);
            }
        }
        (Prop::And(props), texts.join(" and "))
    }

    pub fn sentence(&mut self) -> Sentence {
        let arity = self.rng.gen_range(1..=self.max_arity);
        let saved = self.arity;
        self.arity = arity;
        let (prop, body) = self.matrix();
        self.arity = saved;
        let text = format!("exists {}. {body}", Gen::names(arity).join(", "));
        Sentence { text, prop, arity }
    }
}
