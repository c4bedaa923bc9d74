use super::channel::ChannelSpec;
use super::law::HalfDuplexLaw;
use super::pmf::{table_len, JointPmf, Variable};
use super::validate::{validate_channel, validate_half_duplex};
use super::vars::*;
use crate::error::{Error, Result};

/// Variable order of the full joint pmf.
pub const JOINT_ORDER: [&str; 14] = [
    S, T_P1CO, T_P1PR, X_P1CO, X_P1PR, X_P2CO, X_P2PR, X_P, U_CCO, U_CPR, X_C, V_C, Y_P, Y_C,
];

/// Multiplies the factor chain of the law, then the three per-output
/// channel factors, into the full joint pmf over [`JOINT_ORDER`].
pub fn make_joint(law: &HalfDuplexLaw, chan: &ChannelSpec) -> Result<JointPmf> {
    for name in [X_P, X_C, S] {
        if law.alphabet(name) != chan.alphabet(name) {
            return Err(Error::AlphabetMismatch(name.to_string()));
        }
    }
    let report = validate_half_duplex(law).merge(validate_channel(chan));
    if !report.passed() {
        return Err(Error::Validation(report));
    }

    let alpha = |n: &str| {
        if law.alphabets().contains_key(n) {
            law.alphabet(n).clone()
        } else {
            chan.alphabet(n).clone()
        }
    };
    let vars: Vec<Variable> = JOINT_ORDER
        .iter()
        .map(|n| Variable::new(*n, alpha(n)))
        .collect();
    let dims: Vec<usize> = vars.iter().map(|v| v.alphabet.len()).collect();
    let len = table_len(&dims).map_err(|_| Error::TableTooLarge(dims.iter().product()))?;
    let mut stride = vec![1usize; dims.len()];
    for k in (0..dims.len() - 1).rev() {
        stride[k] = stride[k + 1] * dims[k + 1];
    }
    let mut probs = vec![0.0; len];

    let f = |n: &str| law.conditional(n);
    let (ps, ft1co, ft1pr, fx1co, fx1pr) = (f(S), f(T_P1CO), f(T_P1PR), f(X_P1CO), f(X_P1PR));
    let (fx2co, fx2pr, fucco, fucpr) = (f(X_P2CO), f(X_P2PR), f(U_CCO), f(U_CPR));
    let (mxp, mxc) = (law.x_p_map(), law.x_c_map());
    let fv = chan.output_factor(V_C)?;
    let fyp = chan.output_factor(Y_P)?;
    let fyc = chan.output_factor(Y_C)?;
    let d = |n: &str| dims[JOINT_ORDER.iter().position(|m| *m == n).unwrap()];

    for s in 0..d(S) {
        let p0 = ps.prob(&[], s);
        if p0 == 0.0 {
            continue;
        }
        for t1co in 0..d(T_P1CO) {
            let p1 = p0 * ft1co.prob(&[s], t1co);
            if p1 == 0.0 {
                continue;
            }
            for t1pr in 0..d(T_P1PR) {
                let p2 = p1 * ft1pr.prob(&[t1co, s], t1pr);
                if p2 == 0.0 {
                    continue;
                }
                for x1co in 0..d(X_P1CO) {
                    let p3 = p2 * fx1co.prob(&[t1co, s], x1co);
                    if p3 == 0.0 {
                        continue;
                    }
                    for x1pr in 0..d(X_P1PR) {
                        let p4 = p3 * fx1pr.prob(&[x1co, t1pr, t1co, s], x1pr);
                        if p4 == 0.0 {
                            continue;
                        }
                        for x2co in 0..d(X_P2CO) {
                            let p5 = p4 * fx2co.prob(&[t1co, s], x2co);
                            if p5 == 0.0 {
                                continue;
                            }
                            for x2pr in 0..d(X_P2PR) {
                                let p6 = p5 * fx2pr.prob(&[x2co, t1pr, t1co, s], x2pr);
                                if p6 == 0.0 {
                                    continue;
                                }
                                let xp = mxp.eval(&[x2pr, x2co, x1pr, x1co, t1pr, t1co, s]);
                                for ucco in 0..d(U_CCO) {
                                    let p7 = p6 * fucco.prob(&[t1co, s], ucco);
                                    if p7 == 0.0 {
                                        continue;
                                    }
                                    for ucpr in 0..d(U_CPR) {
                                        let p8 = p7 * fucpr.prob(&[ucco, t1co, s], ucpr);
                                        if p8 == 0.0 {
                                            continue;
                                        }
                                        let xc = mxc.eval(&[s, t1co, t1pr, ucco, ucpr]);
                                        let head = [
                                            s, t1co, t1pr, x1co, x1pr, x2co, x2pr, xp, ucco, ucpr,
                                            xc,
                                        ];
                                        let base: usize =
                                            head.iter().zip(&stride).map(|(i, st)| i * st).sum();
                                        let parents = [xp, xc, s];
                                        let rv = fv.row(&parents);
                                        let ryp = fyp.row(&parents);
                                        let ryc = fyc.row(&parents);
                                        for (v, &pv) in rv.iter().enumerate() {
                                            if pv == 0.0 {
                                                continue;
                                            }
                                            for (yp, &pyp) in ryp.iter().enumerate() {
                                                if pyp == 0.0 {
                                                    continue;
                                                }
                                                for (yc, &pyc) in ryc.iter().enumerate() {
                                                    let off = base
                                                        + v * stride[11]
                                                        + yp * stride[12]
                                                        + yc * stride[13];
                                                    probs[off] += p8 * pv * pyp * pyc;
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    JointPmf::new(vars, probs)
}
