use std::collections::BTreeMap;

use pwgraph::eigbounds::{count_eigs, dirichlet_lambda};
use pwgraph::poincare::{certify, lambda_union, nyquist_size_1d, BoundMethod};
use pwgraph::sampling::{
    certify_partition, certify_uniqueness_by_lambda, dual_frame, frame_bounds,
    reconstruct_derivative, reconstruct_direct, reconstruct_neumann, FrameNormalization,
    NeumannOptions,
};
use pwgraph::{
    io, Error, Graph, GraphKind, LambdaCertificate32, RunConfig, Signal, Signal32,
    SpectralDecomposition, SpectralDecomposition32, VertexSet,
};

fn cycle(n: usize) -> Graph {
    Graph::generate(&GraphKind::Cycle(n)).unwrap()
}

#[test]
fn edge_list_to_reconstruction() {
    let g = Graph::from_edge_list("# square with a tail\n0 1\n1 2\n2 3\n3 0\n3 4\n4 5\n").unwrap();
    let dec = SpectralDecomposition::new(&g).unwrap();
    let s = VertexSet::new(vec![5]);
    let cert = certify::<f64>(&g, &s, 20).unwrap();
    let omega = 0.9 * cert.omega_star;
    assert!(
        certify_uniqueness_by_lambda(&g, omega, &cert)
            .unwrap()
            .unique
    );

    let frame = dual_frame(
        frame_bounds(
            &dec,
            omega,
            &s.complement(&g),
            FrameNormalization::PlainDelta,
        )
        .unwrap(),
    )
    .unwrap();
    let space = dec.pw_space(omega);
    let coefficients: Vec<f64> = (0..space.dim).map(|i| 1.0 / (i + 1) as f64).collect();
    let f = dec.synthesize_on(&space.indices, &coefficients);

    let map: BTreeMap<usize, f64> = frame.u.iter().map(|u| (u, f.values()[u])).collect();
    let parsed = io::parse_samples(&io::format_samples(&map).unwrap()).unwrap();
    let samples = frame.samples_from_map(&parsed).unwrap();
    let direct = reconstruct_direct(&frame, &samples).unwrap();
    let (neumann, report) =
        reconstruct_neumann(&frame, &samples, &NeumannOptions::default()).unwrap();
    assert!(direct.distance(&f) < 1e-10);
    assert!(neumann.distance(&f) < 1e-8);
    assert!(report.converged);

    let missing = BTreeMap::from([(0usize, 1.0)]);
    assert!(matches!(
        frame.samples_from_map(&missing),
        Err(Error::MissingSample(_))
    ));
}

#[test]
fn degree_normalized_frame_reconstructs_too() {
    let g = Graph::generate(&GraphKind::Grid(vec![3, 4])).unwrap();
    let dec = SpectralDecomposition::new(&g).unwrap();
    let s = VertexSet::new(vec![5]);
    let cert = certify::<f64>(&g, &s, 20).unwrap();
    let omega = 0.5 * cert.omega_star;
    let frame = frame_bounds(
        &dec,
        omega,
        &s.complement(&g),
        FrameNormalization::DegreeNormalized,
    )
    .unwrap();
    let frame = dual_frame(frame).unwrap();
    let f = dec.synthesize_on(
        &dec.pw_space(omega).indices,
        &vec![0.5; dec.pw_space(omega).dim],
    );
    let rec = reconstruct_direct(&frame, &frame.sample(&f).unwrap()).unwrap();
    assert!(rec.distance(&f) < 1e-10);
}

#[test]
fn c100_story() {
    let g = cycle(100);
    let dec = SpectralDecomposition::new(&g).unwrap();
    let blocks: Vec<VertexSet> = vec![(2..50).collect(), (52..100).collect()];
    let certs: Vec<_> = blocks
        .iter()
        .map(|b| certify::<f64>(&g, b, 20).unwrap())
        .collect();
    let successive = certs[0]
        .bound(BoundMethod::Successive1d)
        .and_then(|b| b.value)
        .unwrap();
    assert!((successive - 486.711).abs() < 1e-3);

    let union = lambda_union(&g, &certs).unwrap();
    let counts = count_eigs(&dec, 0.002, Some(union.clone()));
    assert_eq!(counts.count_below, 3);
    assert_eq!(counts.certificate_holds, Some(true));

    let partition = certify_partition(&g, 0.002, &blocks).unwrap();
    assert!(partition.unique);
    assert_eq!(partition.uniqueness_set, VertexSet::new(vec![0, 1, 50, 51]));

    let nyquist = nyquist_size_1d(0.002).unwrap();
    assert!(nyquist.bound >= 48.0);
}

#[test]
fn derivative_samples_recover_signal() {
    let g = cycle(6);
    let dec = SpectralDecomposition::new(&g).unwrap();
    let frame = dual_frame(
        frame_bounds(
            &dec,
            0.6,
            &VertexSet::new(vec![0, 2, 4]),
            FrameNormalization::PlainDelta,
        )
        .unwrap(),
    )
    .unwrap();
    let f = dec.synthesize_on(&dec.pw_space(0.6).indices, &[1.0, -0.5, 0.25]);
    let lf = dec.apply_power(1.0, &f, 1.0).unwrap();
    let samples = frame.sample(&lf).unwrap();
    let rec = reconstruct_derivative(&frame, 1.0, &samples).unwrap();
    assert!(rec.signal.distance(&f) < 1e-8);
    assert!(rec.condition_number >= 1.0);
}

#[test]
fn dirichlet_constant_dominates_exact() {
    let g = Graph::generate(&GraphKind::Path(9)).unwrap();
    let s: VertexSet = (3..6).collect();
    let d = dirichlet_lambda::<f64>(&g, &s).unwrap();
    let cert = certify::<f64>(&g, &s, 20).unwrap();
    assert!(d.inequality_holds);
    assert!(cert.lambda_exact <= d.inverse + 1e-12);
}

#[test]
fn single_precision_matches_double() {
    let g = cycle(12);
    let s: VertexSet = (0..3).collect();
    let cert32: LambdaCertificate32 = certify::<f32>(&g, &s, 20).unwrap();
    let cert64 = certify::<f64>(&g, &s, 20).unwrap();
    assert!(
        (f64::from(cert32.lambda_exact) - cert64.lambda_exact).abs() < 1e-4 * cert64.lambda_exact
    );

    let dec32 = SpectralDecomposition32::new(&g).unwrap();
    let dec64 = SpectralDecomposition::new(&g).unwrap();
    for (a, b) in dec32.eigenvalues().iter().zip(dec64.eigenvalues()) {
        assert!((f64::from(*a) - b).abs() < 1e-5);
    }
    let f32_signal = Signal32::delta(&g, 0).unwrap();
    let f64_signal = Signal::delta(&g, 0).unwrap();
    assert_eq!(f64::from(f32_signal.norm()), f64_signal.norm());
}

#[test]
fn run_config_round_trip() {
    let config = RunConfig::from_json(
        r#"{"tolerances": {"recon_tol": 1e-6}, "frame_normalization": "degree_normalized"}"#,
    )
    .unwrap();
    assert_eq!(config.tolerances.recon_tol, 1e-6);
    assert_eq!(config.tolerances.eps_eig, 1e-9);
    assert_eq!(
        config.frame_normalization,
        FrameNormalization::DegreeNormalized
    );
    assert!(RunConfig::from_json(r#"{"tolerances": {"recon_tol": -1}}"#).is_err());
    assert!(RunConfig::from_json(r#"{"unknown": 1}"#).is_err());
}

#[test]
fn certificates_serialize() {
    let g = Graph::generate(&GraphKind::Path(3)).unwrap();
    let cert: pwgraph::LambdaCertificate = certify(&g, &VertexSet::new(vec![1]), 20).unwrap();
    let json = serde_json::to_value(&cert).unwrap();
    assert_eq!(json["set"], serde_json::json!([1]));
    let methods: Vec<&str> = json["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["method"].as_str().unwrap())
        .collect();
    assert!(methods.contains(&"gamma_eigen") && methods.contains(&"single_vertex"));
    let _: &LambdaCertificate32 = &certify::<f32>(&g, &VertexSet::new(vec![1]), 20).unwrap();
}
