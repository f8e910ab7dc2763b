//! Deterministic corpus generators.

use std::str::FromStr;

use crate::error::{Error, Result};

const LCG_MUL: u64 = 6364136223846793005;
const LCG_INC: u64 = 1442695040888963407;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    Random { alphabet: u32, seed: u64 },
    Fibonacci,
    ThueMorse,
    Power { block: Vec<u8>, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    /// Ignored for `Power`, whose length is `|block|·count`.
    pub length: usize,
}

impl GeneratorSpec {
    pub fn random(length: usize, alphabet: u32, seed: u64) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::Random { alphabet, seed },
            length,
        }
    }

    pub fn fibonacci(length: usize) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::Fibonacci,
            length,
        }
    }

    pub fn thue_morse(length: usize) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::ThueMorse,
            length,
        }
    }

    pub fn power(block: &[u8], count: usize) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::Power {
                block: block.to_vec(),
                count,
            },
            length: block.len() * count,
        }
    }
}

/// Names accepted by `gen --kind`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindName {
    Random,
    Fibonacci,
    ThueMorse,
    Power,
}

impl FromStr for KindName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(KindName::Random),
            "fibonacci" => Ok(KindName::Fibonacci),
            "thue-morse" => Ok(KindName::ThueMorse),
            "power" => Ok(KindName::Power),
            _ => Err(Error::Usage(format!("unknown generator kind {s:?}"))),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Vec<u8>> {
    let n = spec.length;
    match &spec.kind {
        GeneratorKind::Random { alphabet, seed } => {
            if !(1..=26).contains(alphabet) {
                return Err(Error::Usage(format!(
                    "alphabet size {alphabet} outside 1..=26"
                )));
            }
            let sigma = u64::from(*alphabet);
            let mut x = *seed;
            Ok((0..n)
                .map(|_| {
                    x = x.wrapping_mul(LCG_MUL).wrapping_add(LCG_INC);
                    b'a' + ((x >> 33) % sigma) as u8
                })
                .collect())
        }
        GeneratorKind::Fibonacci => {
            let (mut prev, mut cur) = (b"a".to_vec(), b"ab".to_vec());
            while cur.len() < n {
                let next = [cur.as_slice(), prev.as_slice()].concat();
                prev = std::mem::replace(&mut cur, next);
            }
            cur.truncate(n);
            Ok(cur)
        }
        GeneratorKind::ThueMorse => Ok((0..n as u64)
            .map(|k| if k.count_ones() % 2 == 0 { b'a' } else { b'b' })
            .collect()),
        GeneratorKind::Power { block, count } => {
            if block.is_empty() {
                return Err(Error::Usage("power needs a non-empty block".into()));
            }
            Ok(block.repeat(*count))
        }
    }
}
