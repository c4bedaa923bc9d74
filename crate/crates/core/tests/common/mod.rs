//! A small binary DMC instance shared by the integration tests.
#![allow(dead_code)]

pub mod mc;
pub mod oracle;

use std::collections::BTreeMap;

use hdccrc_core::config::{AlphabetConfig, ChannelConfig, DmcConfig, LawConfig, RandomLaws};
use hdccrc_core::probability::vars::*;
use hdccrc_core::probability::{
    Alphabet, ChannelSpec, HalfDuplexLaw, CHANNEL_INPUTS, CHANNEL_OUTPUTS,
};

/// Binary codeword alphabets with null symbol `n`; `v_c` has erasure `e`.
pub fn alphabets() -> BTreeMap<String, Alphabet> {
    let mut a = BTreeMap::new();
    for name in [
        T_P1CO, T_P1PR, X_P1CO, X_P1PR, X_P2CO, X_P2PR, U_CCO, U_CPR, X_C,
    ] {
        a.insert(
            name.to_string(),
            Alphabet::new(&["n", "1"]).unwrap().with_null("n").unwrap(),
        );
    }
    for name in [X_P, Y_P, Y_C] {
        a.insert(name.to_string(), Alphabet::new(&["0", "1"]).unwrap());
    }
    a.insert(
        V_C.to_string(),
        Alphabet::new(&["0", "1", "e"])
            .unwrap()
            .with_erasure("e")
            .unwrap(),
    );
    a.insert(S.to_string(), Alphabet::state());
    a
}

/// The six channel alphabets.
pub fn channel_alphabets() -> BTreeMap<String, Alphabet> {
    let mut a = alphabets();
    a.retain(|k, _| CHANNEL_INPUTS.contains(&k.as_str()) || CHANNEL_OUTPUTS.contains(&k.as_str()));
    a
}

fn bsc(input: usize, output: usize, flip: f64) -> f64 {
    if input == output {
        1.0 - flip
    } else {
        flip
    }
}

/// Binary interference channel with listening link `v_c = x_p` through a
/// BSC(0.05) in state `l`, erased in state `t`.
pub fn channel() -> ChannelSpec {
    ChannelSpec::from_fn(channel_alphabets(), |xp, xc, s, yp, yc, v| {
        let xc = if s == 0 { 0 } else { xc };
        let p_yp = if xc == 1 {
            bsc(xp, yp, 0.25)
        } else {
            bsc(xp, yp, 0.1)
        };
        let p_yc = bsc(xc ^ (xp & usize::from(xc == 0)), yc, 0.15);
        let p_v = match (s, v) {
            (0, 2) => 0.0,
            (0, v) => bsc(xp, v, 0.05),
            (_, 2) => 1.0,
            _ => 0.0,
        };
        p_yp * p_yc * p_v
    })
    .unwrap()
}

pub fn law_config(law: &HalfDuplexLaw) -> LawConfig {
    LawConfig {
        x_p_map: law.x_p_map().table.clone(),
        x_c_map: law.x_c_map().table.clone(),
        factors: law
            .conditionals()
            .iter()
            .map(|c| (c.child.clone(), c.table.clone()))
            .collect(),
    }
}

/// The fixture channel with explicit laws and an optional random sweep.
pub fn dmc_config(laws: &[HalfDuplexLaw], random: Option<(u64, Vec<f64>, usize)>) -> DmcConfig {
    let ch = channel();
    let (seed, random) = match random {
        Some((seed, alphas, count)) => (Some(seed), Some(RandomLaws { alphas, count })),
        None => (None, None),
    };
    DmcConfig {
        seed,
        alphabets: alphabets()
            .iter()
            .filter(|(k, _)| k.as_str() != S)
            .map(|(k, a)| (k.clone(), AlphabetConfig::from_alphabet(a)))
            .collect(),
        channel: ChannelConfig {
            table: (0..ch.row_count())
                .flat_map(|r| {
                    let (xp, rest) = (r / 4, r % 4);
                    ch.row(xp, rest / 2, rest % 2).to_vec()
                })
                .collect(),
        },
        laws: laws.iter().map(law_config).collect(),
        random,
    }
}

/// Moves the `x_p1co` rows of state `t` off the null symbol.
pub fn break_x_p1co(cfg: &mut LawConfig) {
    // parents (t_p1co, s), s fastest; child (n, 1)
    let table = cfg.factors.get_mut(X_P1CO).unwrap();
    for row in 0..table.len() / 2 {
        if row % 2 == 1 {
            table[2 * row] = 0.5;
            table[2 * row + 1] = 0.5;
        }
    }
}

/// The joint pmf over `JOINT_ORDER` by direct multiplication of every
/// factor, indicator and the full channel row; returns `(table, dims)`.
pub fn brute_joint(law: &HalfDuplexLaw, chan: &ChannelSpec) -> (Vec<f64>, Vec<usize>) {
    use hdccrc_core::probability::JOINT_ORDER;
    let pos = |n: &str| JOINT_ORDER.iter().position(|v| *v == n).unwrap();
    let dims: Vec<usize> = JOINT_ORDER
        .iter()
        .map(|n| {
            law.alphabets()
                .get(*n)
                .unwrap_or_else(|| chan.alphabet(n))
                .len()
        })
        .collect();
    let len: usize = dims.iter().product();
    let mut probs = vec![0.0; len];
    for (k, slot) in probs.iter_mut().enumerate() {
        let t = oracle::decode(k, &dims);
        let parents =
            |names: &[String]| -> Vec<usize> { names.iter().map(|n| t[pos(n)]).collect() };
        let mut p = 1.0;
        for c in law.conditionals() {
            p *= c.prob(&parents(&c.parents), t[pos(&c.child)]);
        }
        for m in [law.x_p_map(), law.x_c_map()] {
            if m.eval(&parents(&m.parents)) != t[pos(&m.child)] {
                p = 0.0;
            }
        }
        if p > 0.0 {
            p *= chan.prob(
                t[pos(X_P)],
                t[pos(X_C)],
                t[pos(S)],
                t[pos(Y_P)],
                t[pos(Y_C)],
                t[pos(V_C)],
            );
        }
        *slot = p;
    }
    (probs, dims)
}
