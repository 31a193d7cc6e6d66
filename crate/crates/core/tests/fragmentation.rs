mod oracles;

use polex_core::fragmentation::*;
use polex_core::geometry::{polygonize, rdp_closed, rdp_open, Contour, Point};
use polex_core::raster::LabelMap;
use polex_core::testimage::procedural_image;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn voronoi_matches_brute_force_nearest_site() {
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sites = sample_sites(12 + seed as usize * 7, (64, 64), &mut rng).unwrap();
        let fast = voronoi_partition(&sites, (64, 64));
        assert_eq!(fast.as_slice(), oracles::brute_voronoi(&sites, 64, 64).as_slice());
    }
}

#[test]
fn voronoi_matches_brute_force_with_lattice_ties() {
    let sites: Vec<Point> = (0..4)
        .flat_map(|j| (0..4).map(move |i| Point::new(8.0 + 16.0 * i as f64, 8.0 + 16.0 * j as f64)))
        .collect();
    let fast = voronoi_partition(&sites, (64, 64));
    assert_eq!(fast.as_slice(), oracles::brute_voronoi(&sites, 64, 64).as_slice());
}

#[test]
fn erosion_matches_per_pixel_distance_oracle() {
    for (seed, rate) in [(1u64, 3.0), (2, 6.5), (3, 10.0)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sites = sample_sites(9, (64, 64), &mut rng).unwrap();
        let labels = voronoi_partition(&sites, (64, 64));
        let noise = perlin_field((64, 64), &NoiseParams::default(), &mut rng).unwrap();
        let fast = erode_partition(&labels, &noise, rate).unwrap();
        let slow = oracles::brute_erosion(labels.as_slice(), noise.values(), 64, 64, rate);
        assert_eq!(fast.as_slice(), slow.as_slice(), "seed {seed}");
    }
}

#[test]
fn adjacency_agrees_with_raster_contacts() {
    let mut total_mismatch = 0;
    for seed in 0..4 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let sites = sample_sites(50, (300, 300), &mut rng).unwrap();
        let labels = voronoi_partition(&sites, (300, 300));
        let raster = oracles::raster_adjacency(labels.as_slice(), 300, 300);
        let graph: std::collections::BTreeSet<_> = image_adjacency(&sites, (300, 300)).unwrap().into_iter().collect();
        let mismatch = raster.symmetric_difference(&graph).count();
        // sub-pixel Voronoi edges can appear in only one of the two views
        assert!(mismatch <= 2, "seed {seed}: {mismatch} mismatches");
        total_mismatch += mismatch;
    }
    assert!(total_mismatch <= 4);
}

#[test]
fn rdp_matches_naive_recursion_on_a_noisy_circle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts: Vec<Point> = (0..1200)
        .map(|i| {
            let t = i as f64 / 1200.0 * std::f64::consts::TAU;
            let r = 200.0 + rng.gen_range(-2.0..2.0);
            Point::new(300.0 + r * t.cos(), 300.0 + r * t.sin())
        })
        .collect();
    for eps in [0.5, 2.0, 6.28, 20.0] {
        assert_eq!(rdp_closed(&pts, eps), oracles::naive_rdp_closed(&pts, eps), "eps {eps}");
        assert_eq!(rdp_open(&pts[..500], eps), oracles::naive_rdp_open(&pts[..500], eps));
    }
    let poly = polygonize(&Contour::new(pts.clone()).unwrap(), 0.005).unwrap();
    let bound = 0.005 * poly.perimeter;
    assert!(pts.iter().all(|&p| poly.boundary_distance(p) <= bound + 1e-9));
}

fn spec(n: usize, erosion: f64, seed: u64) -> PuzzleSpec {
    PuzzleSpec::new(240, 180, n, erosion, seed)
}

#[test]
fn generation_is_deterministic() {
    let img = procedural_image(240, 180, 3);
    let a = generate_puzzle(&spec(12, 6.0, 42), &img).unwrap();
    let b = generate_puzzle(&spec(12, 6.0, 42), &img).unwrap();
    assert_eq!(a.labels, b.labels);
    assert_eq!(a.sites, b.sites);
    assert_eq!(a.fragments, b.fragments);
    assert_eq!(a.adjacency, b.adjacency);
    let c = generate_puzzle(&spec(12, 6.0, 43), &img).unwrap();
    assert_ne!(a.labels, c.labels);
}

#[test]
fn non_eroded_labels_partition_every_pixel() {
    let img = procedural_image(240, 180, 3);
    let p = generate_puzzle(&spec(15, 0.0, 7), &img).unwrap();
    assert_eq!(p.labels.count_labeled(), 240 * 180);
    let total: usize = p.fragments.iter().map(|f| f.area()).sum();
    assert_eq!(total, 240 * 180);
}

#[test]
fn paste_back_reproduces_the_eroded_image() {
    let img = procedural_image(240, 180, 9);
    for erosion in [0.0, 8.0] {
        let p = generate_puzzle(&spec(10, erosion, 11), &img).unwrap();
        assert_eq!(paste_fragments(&p.fragments, (240, 180)), p.eroded_image());
    }
}

#[test]
fn more_erosion_never_adds_pixels() {
    let img = procedural_image(240, 180, 1);
    let mut prev: Option<Puzzle> = None;
    for rate in [0.0, 2.0, 5.0, 9.0] {
        let p = generate_puzzle(&spec(10, rate, 21), &img).unwrap();
        if let Some(q) = &prev {
            for f in &p.fragments {
                let before = q.fragment(f.id).expect("culling only removes").area();
                assert!(f.area() <= before, "rate {rate} fragment {}", f.id);
            }
            for (a, b) in p.labels.as_slice().iter().zip(q.labels.as_slice()) {
                assert!(*a == LabelMap::BACKGROUND || a == b);
            }
        }
        prev = Some(p);
    }
}

#[test]
fn ground_truth_relative_pose_maps_source_into_target_frame() {
    let img = procedural_image(240, 180, 2);
    let p = generate_puzzle(&spec(10, 0.0, 5), &img).unwrap();
    let pairs = extract_pairs(&p);
    assert!(!pairs.is_empty());
    for pair in pairs {
        let t = p.fragment(pair.target).unwrap();
        let s = p.fragment(pair.source).unwrap();
        for (x, y) in s.mask.iter_set().step_by(17) {
            let q = Point::new(x as f64, y as f64);
            let via_target = t.pose.apply(pair.relative.apply(q));
            let direct = s.pose.apply(q);
            assert!(via_target.distance(direct) < 1e-9);
        }
        // neighbors touch in the puzzle frame
        let touching = s.mask.iter_set().any(|(x, y)| {
            let g = s.pose.apply(Point::new(x as f64, y as f64));
            [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]
                .iter()
                .any(|(dx, dy)| {
                    let (gx, gy) = ((g.x + dx) as i64, (g.y + dy) as i64);
                    gx >= 0 && gy >= 0 && gx < 240 && gy < 180 && p.labels.get(gx as u32, gy as u32) == pair.target
                })
        });
        assert!(touching, "pair {:?}", (pair.target, pair.source));
    }
}

#[test]
fn pair_count_is_about_three_per_fragment() {
    let img = procedural_image(400, 400, 4);
    let mut ratio = 0.0;
    for seed in 0..5 {
        let p = generate_puzzle(&PuzzleSpec::new(400, 400, 40, 0.0, seed), &img).unwrap();
        ratio += extract_pairs(&p).len() as f64 / p.fragments.len() as f64;
    }
    ratio /= 5.0;
    // planar triangulation: at most 3n - 6 edges, fewer along the hull
    assert!((2.3..3.0).contains(&ratio), "{ratio}");
}

#[test]
fn stats_are_consistent_with_the_fragments() {
    let img = procedural_image(300, 300, 4);
    let p = generate_puzzle(&PuzzleSpec::new(300, 300, 20, 0.0, 3), &img).unwrap();
    let s = puzzle_stats(&p).unwrap();
    assert_eq!(s.fragments, p.fragments.len());
    assert!((s.mean_area - 90000.0 / s.fragments as f64).abs() < 1e-9);
    let edges: usize = s.per_fragment.iter().map(|f| f.neighbors).sum();
    assert_eq!(edges, 2 * p.adjacency.len());
    assert!(s.per_fragment.iter().all(|f| f.perimeter > 0.0));
}
