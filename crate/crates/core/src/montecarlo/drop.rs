//! One Monte Carlo drop: placement, both hops, harvesting and FBL outage.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::energy::harvested_power;
use crate::error::ModelError;
use crate::fbl::{q_inv, FblAssessment};
use crate::geometry::{coverage_radius, disc_point, DevicePose, Point3};
use crate::params::{SimParams, TiltFrame};
use crate::rf::{BcLinkState, LinkDraws};
use crate::vlc::VlcLinkState;

/// All random inputs of a drop, drawn in a fixed order: BD radius, BD angle,
/// UE x, UE y, forward and backscatter LoS uniforms, then the four shadowing
/// normals (forward LoS, forward NLoS, back LoS, back NLoS).
///
/// Every draw is taken whatever the configuration, so changing a parameter
/// never shifts the stream seen by later draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DropDraws {
    pub u_bd_radius: f64,
    pub u_bd_angle: f64,
    pub u_ue_x: f64,
    pub u_ue_y: f64,
    pub forward: LinkDraws,
    pub back: LinkDraws,
}

impl DropDraws {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u_bd_radius = rng.random();
        let u_bd_angle = rng.random();
        let u_ue_x = rng.random();
        let u_ue_y = rng.random();
        let los_f = rng.random();
        let los_b = rng.random();
        let zf_los = rng.sample(StandardNormal);
        let zf_nlos = rng.sample(StandardNormal);
        let zb_los = rng.sample(StandardNormal);
        let zb_nlos = rng.sample(StandardNormal);
        DropDraws {
            u_bd_radius,
            u_bd_angle,
            u_ue_x,
            u_ue_y,
            forward: LinkDraws {
                los_uniform: los_f,
                z_los: zf_los,
                z_nlos: zf_nlos,
            },
            back: LinkDraws {
                los_uniform: los_b,
                z_los: zb_los,
                z_nlos: zb_nlos,
            },
        }
    }
}

/// Everything computed for one drop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DropRecord {
    pub bd: DevicePose,
    pub ue: Point3,
    pub vlc: VlcLinkState,
    pub harvested_power: f64,
    pub bc: BcLinkState,
    pub assessment: FblAssessment,
}

/// Parameters plus the quantities that are constant across drops.
#[derive(Debug, Clone)]
pub struct Pipeline<'a> {
    params: &'a SimParams,
    q_inv_eps: f64,
    placement_radius: f64,
}

impl<'a> Pipeline<'a> {
    pub fn new(params: &'a SimParams) -> Result<Self, ModelError> {
        params.validate()?;
        Ok(Pipeline {
            params,
            q_inv_eps: q_inv(params.fbl.target_error)?,
            placement_radius: placement_radius(params),
        })
    }

    pub fn params(&self) -> &SimParams {
        self.params
    }

    pub fn placement_radius(&self) -> f64 {
        self.placement_radius
    }

    pub fn run_drop<R: Rng + ?Sized>(&self, rng: &mut R) -> DropRecord {
        self.run_with_draws(&DropDraws::sample(rng))
    }

    pub fn run_with_draws(&self, draws: &DropDraws) -> DropRecord {
        let s = &self.params.scenario;
        let led = s.dedicated();
        let pos = disc_point(
            &led.position,
            self.placement_radius,
            s.bd_height,
            draws.u_bd_radius,
            draws.u_bd_angle,
        );
        let ue = Point3::new(draws.u_ue_x * s.room_w, draws.u_ue_y * s.room_l, s.ue_height);
        let bd = oriented_pose(self.params, pos);
        self.evaluate(bd, ue, &draws.forward, &draws.back)
    }

    /// Deterministic evaluation at fixed positions and link randomness.
    pub fn evaluate(&self, bd: DevicePose, ue: Point3, forward: &LinkDraws, back: &LinkDraws) -> DropRecord {
        let p = self.params;
        let vlc = VlcLinkState::evaluate(&p.scenario, &bd, &p.vlc);
        let harvested = harvested_power(vlc.i_dc, &p.energy);
        let bc = BcLinkState::evaluate(
            &p.scenario.rfs_position,
            &bd.position,
            &ue,
            vlc.i_ac_amp,
            &p.rf,
            forward,
            back,
        );
        let assessment = FblAssessment::assess(vlc.sinr, bc.snr, &p.fbl, self.q_inv_eps);
        DropRecord {
            bd,
            ue,
            vlc,
            harvested_power: harvested,
            bc,
            assessment,
        }
    }
}

/// BD pose at `position` with the scenario's tilt.
pub fn oriented_pose(params: &SimParams, position: Point3) -> DevicePose {
    let s = &params.scenario;
    if s.bd_tilt == 0.0 {
        return DevicePose::upward(position);
    }
    let pose = match s.tilt_frame {
        TiltFrame::FixedAzimuth => {
            let (sin, cos) = s.bd_tilt.sin_cos();
            DevicePose::with_normal(position, [sin, 0.0, cos])
        }
        TiltFrame::TowardDedicated => DevicePose::tilted_toward(position, &s.dedicated().position, s.bd_tilt),
    };
    pose.expect("tilt validated with the scenario")
}

/// Radius of the disc, centred below the dedicated LED, in which the BD is
/// placed.
///
/// This is the coverage radius of an upward-facing receiver, whatever the
/// configured tilt, so orientation sweeps compare devices over the same area.
/// A field of view of 90 deg covers the whole floor and the disc is then
/// limited by the nearest wall.
pub fn placement_radius(params: &SimParams) -> f64 {
    let s = &params.scenario;
    let c = s.dedicated().position;
    let wall = c.x.min(s.room_w - c.x).min(c.y).min(s.room_l - c.y);
    if s.fov >= FRAC_PI_2 {
        return wall;
    }
    coverage_radius(s.led_height(), s.bd_height, 0.0, s.fov)
        .unwrap_or(wall)
        .min(wall)
}
