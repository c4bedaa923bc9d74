use super::fm::project_fm;
use super::polytope::build_polytope;
use super::region2d::Region2D;
use super::terms::{assemble_terms, MiSource, MiTerms};
use crate::error::Result;
use crate::info::cond_mutual_info;
use crate::probability::vars::S;
use crate::probability::{make_joint, ChannelSpec, HalfDuplexLaw, JointPmf, StateRole};

/// Per-state conditional pmfs of a finite joint law.
pub struct DmcSource {
    joint: JointPmf,
    listen: Option<JointPmf>,
    transmit: Option<JointPmf>,
}

impl DmcSource {
    pub fn new(law: &HalfDuplexLaw, chan: &ChannelSpec) -> Result<Self> {
        let joint = make_joint(law, chan)?;
        let cond = |sym: &str| -> Result<Option<JointPmf>> {
            if joint.event_probability(S, sym)? > 0.0 {
                joint.condition_on_event(S, sym).map(Some)
            } else {
                Ok(None)
            }
        };
        let listen = cond("l")?;
        let transmit = cond("t")?;
        Ok(Self {
            joint,
            listen,
            transmit,
        })
    }

    pub fn joint(&self) -> &JointPmf {
        &self.joint
    }
}

impl MiSource for DmcSource {
    fn mi(&self, state: StateRole, x: &[&str], y: &[&str], z: &[&str]) -> Result<f64> {
        let pmf = match state {
            StateRole::Listen => &self.listen,
            StateRole::Transmit => &self.transmit,
        };
        match pmf {
            Some(p) => Ok(cond_mutual_info(p, x, y, z)?.value()),
            None => Ok(0.0),
        }
    }

    fn state_output_mi(&self, output: &str) -> Result<f64> {
        let none: [&str; 0] = [];
        Ok(cond_mutual_info(&self.joint, &[S], &[output], &none)?.value())
    }
}

/// The eighteen right-hand sides and binning thresholds of a finite law.
pub fn mi_terms_dmc(law: &HalfDuplexLaw, chan: &ChannelSpec) -> Result<MiTerms> {
    let src = DmcSource::new(law, chan)?;
    assemble_terms(law.alpha(), &src, false)
}

/// Projection of one finite law's rate polytope onto `(R_P, R_C)`.
pub fn dmc_law_region(law: &HalfDuplexLaw, chan: &ChannelSpec) -> Result<Region2D> {
    project_fm(&build_polytope(&mi_terms_dmc(law, chan)?))
}
