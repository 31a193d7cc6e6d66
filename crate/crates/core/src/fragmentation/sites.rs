use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Minimum pairwise distance between sites, in pixels.
pub const MIN_SITE_SEPARATION: f64 = 2.0;

const MAX_ATTEMPTS_PER_SITE: usize = 10_000;

/// Draws `n` i.i.d. uniform sites over `[0, w) × [0, h)`, resampling any
/// draw closer than [`MIN_SITE_SEPARATION`] to an accepted site.
pub fn sample_sites<R: Rng + ?Sized>(n: usize, extent: (u32, u32), rng: &mut R) -> Result<Vec<Point>> {
    let (w, h) = extent;
    let available = w as usize * h as usize;
    if n < 2 {
        return Err(Error::invalid("at least two sites are required"));
    }
    if n > available {
        return Err(Error::TooManySites {
            requested: n,
            available,
        });
    }
    let min_sq = MIN_SITE_SEPARATION * MIN_SITE_SEPARATION;
    let mut sites: Vec<Point> = Vec::with_capacity(n);
    while sites.len() < n {
        let mut placed = false;
        for _ in 0..MAX_ATTEMPTS_PER_SITE {
            let p = Point::new(rng.gen::<f64>() * w as f64, rng.gen::<f64>() * h as f64);
            if sites.iter().all(|s| (*s - p).norm_sq() >= min_sq) {
                sites.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::TooManySites {
                requested: n,
                available,
            });
        }
    }
    Ok(sites)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_sites_are_distinct_and_reproducible() {
        let a = sample_sites(2, (10, 10), &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = sample_sites(2, (10, 10), &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
        assert!(a[0].distance(a[1]) >= MIN_SITE_SEPARATION);
    }

    #[test]
    fn mean_position_near_center() {
        let s = sample_sites(1000, (1000, 1000), &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let mean = s.iter().fold(Point::ORIGIN, |a, &p| a + p) * (1.0 / s.len() as f64);
        assert!(
            (mean.x - 500.0).abs() < 50.0 && (mean.y - 500.0).abs() < 50.0,
            "{mean:?}"
        );
        assert!(s
            .iter()
            .all(|p| p.x >= 0.0 && p.x < 1000.0 && p.y >= 0.0 && p.y < 1000.0));
    }

    #[test]
    fn too_many_sites_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            sample_sites(17, (4, 4), &mut rng),
            Err(Error::TooManySites { .. })
        ));
        assert!(sample_sites(1, (4, 4), &mut rng).is_err());
    }
}
