//! Node positions, receiver orientation, Lambertian emitters and the
//! placement samplers used by the Monte Carlo drops.
//!
//! All LED luminaires emit straight down. The backscatter device (BD) and its
//! photodetector share one position and one acceptance-cone axis.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// A point in the room frame, in meters. `z` is height above the floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn sub(&self, other: &Point3) -> [f64; 3] {
        [self.x - other.x, self.y - other.y, self.z - other.z]
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        norm(self.sub(other))
    }

    /// Distance projected on the floor plane.
    pub fn distance_2d(&self, other: &Point3) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Position and acceptance-cone axis of the backscatter device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DevicePose {
    pub position: Point3,
    normal: [f64; 3],
    tilt: f64,
}

impl DevicePose {
    /// Receiver looking straight up.
    pub fn upward(position: Point3) -> Self {
        DevicePose {
            position,
            normal: [0.0, 0.0, 1.0],
            tilt: 0.0,
        }
    }

    /// Receiver with an arbitrary axis; the axis is normalized and must not
    /// point below the horizon.
    pub fn with_normal(position: Point3, normal: [f64; 3]) -> Result<Self, ModelError> {
        let n = norm(normal);
        if !(n.is_finite() && n > 0.0) {
            return Err(ModelError::Geometry("receiver normal has zero length"));
        }
        let unit = [normal[0] / n, normal[1] / n, normal[2] / n];
        if unit[2] < 0.0 {
            return Err(ModelError::Geometry("receiver normal points downward"));
        }
        Ok(DevicePose {
            position,
            normal: unit,
            tilt: unit[2].clamp(-1.0, 1.0).acos(),
        })
    }

    /// Receiver tilted by `alpha` from vertical inside the vertical plane that
    /// contains the device and `target`. Positive `alpha` leans toward the
    /// target, negative away from it, so the incidence angle of a source at
    /// `target` becomes `irradiance - alpha`.
    ///
    /// When the device sits exactly below the target the plane is undefined
    /// and the +x direction is used.
    pub fn tilted_toward(position: Point3, target: &Point3, alpha: f64) -> Result<Self, ModelError> {
        if !(alpha.abs() <= FRAC_PI_2) {
            return Err(ModelError::domain("tilt", alpha, "[-pi/2, pi/2]"));
        }
        let (dx, dy) = (target.x - position.x, target.y - position.y);
        let h = dx.hypot(dy);
        let (ux, uy) = if h > 1e-12 { (dx / h, dy / h) } else { (1.0, 0.0) };
        let (s, c) = alpha.sin_cos();
        Ok(DevicePose {
            position,
            normal: [s * ux, s * uy, c],
            tilt: alpha.abs(),
        })
    }

    pub fn normal(&self) -> [f64; 3] {
        self.normal
    }

    /// Unsigned angle between the receiver axis and the upward vertical.
    pub fn tilt(&self) -> f64 {
        self.tilt
    }
}

/// Ceiling luminaire acting as a VLC access point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LedAp {
    pub position: Point3,
    semi_angle: f64,
    lambertian_index: f64,
}

impl LedAp {
    pub fn new(position: Point3, semi_angle: f64) -> Result<Self, ModelError> {
        if !position.is_finite() {
            return Err(ModelError::Geometry("LED position is not finite"));
        }
        Ok(LedAp {
            position,
            semi_angle,
            lambertian_index: lambertian_index(semi_angle)?,
        })
    }

    /// Half-power semi-angle in radians.
    pub fn semi_angle(&self) -> f64 {
        self.semi_angle
    }

    pub fn lambertian_index(&self) -> f64 {
        self.lambertian_index
    }
}

/// Lambertian emission order for a half-power semi-angle (radians).
pub fn lambertian_index(semi_angle: f64) -> Result<f64, ModelError> {
    if !(semi_angle > 0.0 && semi_angle < FRAC_PI_2) {
        return Err(ModelError::domain("semi_angle", semi_angle, "(0, pi/2)"));
    }
    let nu = -1.0 / semi_angle.cos().log2();
    if !nu.is_finite() {
        return Err(ModelError::domain("semi_angle", semi_angle, "(0, pi/2)"));
    }
    // cos() of the usual semi-angles (60 deg -> 1/2) is off by an ulp; snap
    // orders that are integral up to rounding.
    let rounded = nu.round();
    if (nu - rounded).abs() <= 8.0 * f64::EPSILON * nu {
        return Ok(rounded);
    }
    Ok(nu)
}

/// Distance and angles of the line-of-sight path from an LED to the device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkAngles {
    pub distance: f64,
    /// Angle off the LED's (downward) emission axis.
    pub irradiance: f64,
    /// Angle off the receiver axis.
    pub incidence: f64,
}

pub fn link_angles(led: &LedAp, bd: &DevicePose) -> Result<LinkAngles, ModelError> {
    let to_led = led.position.sub(&bd.position);
    let d = norm(to_led);
    if d == 0.0 {
        return Err(ModelError::Geometry("LED and device coincide"));
    }
    if to_led[2] <= 0.0 {
        return Err(ModelError::Geometry("LED is not above the device"));
    }
    let cos_phi = (to_led[2] / d).clamp(-1.0, 1.0);
    let unit = [to_led[0] / d, to_led[1] / d, to_led[2] / d];
    let cos_psi = dot(unit, bd.normal).clamp(-1.0, 1.0);
    Ok(LinkAngles {
        distance: d,
        irradiance: cos_phi.acos(),
        incidence: cos_psi.acos(),
    })
}

/// Radius of the floor-projected coverage disc of one LED for a receiver
/// with the given tilt and field-of-view semi-angle.
pub fn coverage_radius(h_led: f64, h_bd: f64, tilt_alpha: f64, fov: f64) -> Result<f64, ModelError> {
    if h_led < h_bd {
        return Err(ModelError::Geometry("LED below the device plane"));
    }
    let cone = fov + tilt_alpha;
    if !(cone < FRAC_PI_2) {
        return Err(ModelError::domain("fov + tilt", cone, "(-inf, pi/2)"));
    }
    if cone <= 0.0 {
        return Ok(0.0);
    }
    Ok((h_led - h_bd) * cone.tan())
}

/// Maps two uniforms in [0, 1) to a uniform point of the disc.
pub fn disc_point(center: &Point3, radius: f64, height: f64, u_radius: f64, u_angle: f64) -> Point3 {
    let r = radius * u_radius.sqrt();
    let (s, c) = (2.0 * PI * u_angle).sin_cos();
    Point3::new(center.x + r * c, center.y + r * s, height)
}

/// Uniform position inside the coverage disc centred below `led`.
pub fn sample_bd_position<R: Rng + ?Sized>(rng: &mut R, led: &LedAp, radius: f64, bd_height: f64) -> Point3 {
    let u_radius: f64 = rng.random();
    let u_angle: f64 = rng.random();
    disc_point(&led.position, radius, bd_height, u_radius, u_angle)
}

/// Uniform position over the room floor plan at `height`.
pub fn sample_ue_position<R: Rng + ?Sized>(
    rng: &mut R,
    room_w: f64,
    room_l: f64,
    height: f64,
) -> Result<Point3, ModelError> {
    if !(room_w > 0.0 && room_l > 0.0) {
        return Err(ModelError::Geometry("room has zero area"));
    }
    let u: f64 = rng.random();
    let v: f64 = rng.random();
    Ok(Point3::new(u * room_w, v * room_l, height))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    fn led_at(x: f64, y: f64) -> LedAp {
        LedAp::new(Point3::new(x, y, 2.5), deg(60.0)).unwrap()
    }

    #[test]
    fn lambertian_index_values() {
        assert_eq!(lambertian_index(deg(60.0)).unwrap(), 1.0);
        // -1/log2(cos 30deg), evaluated with mpmath at 30 digits
        assert_relative_eq!(
            lambertian_index(deg(30.0)).unwrap(),
            4.818_841_679_306_418,
            max_relative = 1e-12
        );
        assert!(lambertian_index(FRAC_PI_2).is_err());
        assert!(lambertian_index(0.0).is_err());
        assert!(lambertian_index(1e-4).unwrap() > 1e7);
        let wide = lambertian_index(FRAC_PI_2 - 1e-9).unwrap();
        assert!(wide > 0.0 && wide < 0.05);
    }

    #[test]
    fn lambertian_index_decreasing() {
        // wider beams have lower order
        let mut prev = f64::INFINITY;
        for i in 1..90 {
            let nu = lambertian_index(deg(i as f64)).unwrap();
            assert!(nu < prev);
            prev = nu;
        }
    }

    #[test]
    fn coaxial_angles() {
        let bd = DevicePose::upward(Point3::new(5.0, 5.0, 1.5));
        let a = link_angles(&led_at(5.0, 5.0), &bd).unwrap();
        assert_relative_eq!(a.distance, 1.0);
        assert_eq!(a.irradiance, 0.0);
        assert_eq!(a.incidence, 0.0);
    }

    #[test]
    fn diagonal_angles() {
        let bd = DevicePose::upward(Point3::new(6.0, 5.0, 1.5));
        let a = link_angles(&led_at(5.0, 5.0), &bd).unwrap();
        assert_relative_eq!(a.distance, 2f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(a.irradiance, deg(45.0), epsilon = 1e-12);
        assert_relative_eq!(a.incidence, deg(45.0), epsilon = 1e-12);
    }

    #[test]
    fn tilt_toward_led_cancels_incidence() {
        let led = led_at(5.0, 5.0);
        let pos = Point3::new(6.0, 5.0, 1.5);
        let bd = DevicePose::tilted_toward(pos, &led.position, deg(45.0)).unwrap();
        let a = link_angles(&led, &bd).unwrap();
        assert!(a.incidence.abs() < 1e-7);
        assert_relative_eq!(bd.tilt(), deg(45.0));

        let away = DevicePose::tilted_toward(pos, &led.position, deg(-10.0)).unwrap();
        let a = link_angles(&led, &away).unwrap();
        assert_relative_eq!(a.incidence, deg(55.0), epsilon = 1e-12);
    }

    #[test]
    fn link_angles_rejects_degenerate() {
        let led = led_at(5.0, 5.0);
        let same = DevicePose::upward(led.position);
        assert!(link_angles(&led, &same).is_err());
        let above = DevicePose::upward(Point3::new(5.0, 5.0, 3.0));
        assert!(link_angles(&led, &above).is_err());
    }

    #[test]
    fn coverage_radius_values() {
        assert_relative_eq!(
            coverage_radius(2.5, 1.5, 0.0, deg(60.0)).unwrap(),
            3f64.sqrt(),
            epsilon = 1e-12
        );
        assert_relative_eq!(coverage_radius(2.5, 1.5, 0.0, deg(45.0)).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(coverage_radius(2.5, 2.5, 0.0, deg(60.0)).unwrap(), 0.0);
        assert!(coverage_radius(2.5, 1.5, deg(30.0), deg(60.0)).is_err());
    }

    #[test]
    fn coverage_radius_increasing() {
        let mut prev = -1.0;
        for i in 0..40 {
            let r = coverage_radius(2.5, 1.5, deg(i as f64), deg(45.0)).unwrap();
            assert!(r > prev);
            prev = r;
        }
        let mut prev = -1.0;
        for i in 1..85 {
            let r = coverage_radius(2.5, 1.5, 0.0, deg(i as f64)).unwrap();
            assert!(r > prev);
            prev = r;
        }
    }

    #[test]
    fn disc_sampling_mean_radius() {
        let led = led_at(5.0, 5.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let radius = 1.732;
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let p = sample_bd_position(&mut rng, &led, radius, 1.5);
            let r = p.distance_2d(&led.position);
            assert!(r <= radius + 1e-12);
            assert_eq!(p.z, 1.5);
            sum += r;
        }
        let mean = sum / n as f64;
        assert!((mean / (2.0 / 3.0 * radius) - 1.0).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn disc_sampling_radial_chi_square() {
        // 10 equal-area annuli; counts must be uniform.
        let led = led_at(5.0, 5.0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let radius = 2.0;
        let n = 100_000;
        let mut bins = [0u32; 10];
        for _ in 0..n {
            let p = sample_bd_position(&mut rng, &led, radius, 1.5);
            let frac = (p.distance_2d(&led.position) / radius).powi(2);
            bins[((frac * 10.0) as usize).min(9)] += 1;
        }
        let expected = n as f64 / 10.0;
        let chi2: f64 = bins.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // chi-square(9) critical value at p = 0.01
        assert!(chi2 < 21.666, "chi2 = {chi2}");
    }

    #[test]
    fn zero_radius_hits_center() {
        let led = led_at(2.0, 8.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = sample_bd_position(&mut rng, &led, 0.0, 1.5);
        assert_eq!((p.x, p.y), (2.0, 8.0));
    }

    #[test]
    fn ue_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 100_000;
        let (mut sx, mut sy) = (0.0, 0.0);
        for _ in 0..n {
            let p = sample_ue_position(&mut rng, 10.0, 10.0, 1.5).unwrap();
            assert!((0.0..=10.0).contains(&p.x) && (0.0..=10.0).contains(&p.y));
            sx += p.x;
            sy += p.y;
        }
        assert!((sx / n as f64 - 5.0).abs() < 0.05);
        assert!((sy / n as f64 - 5.0).abs() < 0.05);
        assert!(sample_ue_position(&mut rng, 0.0, 10.0, 1.5).is_err());
    }

    proptest::proptest! {
        #[test]
        fn vertical_normal_gives_equal_angles(x in 0.0..10.0f64, y in 0.0..10.0f64, h in 0.5..2.4f64) {
            let led = led_at(5.0, 5.0);
            let bd = DevicePose::upward(Point3::new(x, y, h));
            let a = link_angles(&led, &bd).unwrap();
            proptest::prop_assert!((a.irradiance - a.incidence).abs() < 1e-12);
        }
    }
}
