use std::fs;
use std::path::Path;

use airbench::core::model::{Dataset, Split};
use airbench::core::synthflow::{generate_split, sample_point_cloud, GenerationConfig, JoukowskiParams};
use airbench::io::{dataset_digest, encode_dataset, read_dataset, write_dataset, MANIFEST};
use airbench::Error;
use proptest::prelude::*;

fn small(n: usize) -> Dataset {
    let c = GenerationConfig { n_test: n, nodes_per_sample: 96, ..Default::default() };
    generate_split(&c, Split::Test, "cfg").unwrap()
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn empty_dataset_writes_only_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = Dataset { split: Split::Train, samples: vec![], generation_config_digest: String::new() };
    write_dataset(&d, dir.path()).unwrap();
    let f = files(dir.path());
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].0, MANIFEST);
    assert_eq!(read_dataset(dir.path()).unwrap(), d);
}

#[test]
fn one_sample_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let d = small(1);
    write_dataset(&d, dir.path()).unwrap();
    let back = read_dataset(dir.path()).unwrap();
    assert_eq!(back, d);
    let (a, b) = (&d.samples[0], &back.samples[0]);
    let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a.truth_fields.p_s), bits(&b.truth_fields.p_s));
    assert_eq!(bits(&a.distance), bits(&b.distance));
}

#[test]
fn writing_twice_is_byte_identical() {
    let (x, y) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let d = small(3);
    write_dataset(&d, x.path()).unwrap();
    write_dataset(&d, y.path()).unwrap();
    assert_eq!(files(x.path()), files(y.path()));
    let encoded: Vec<_> = encode_dataset(&d).into_iter().map(|(p, b)| (p.display().to_string(), b)).collect();
    let mut encoded = encoded;
    encoded.sort();
    assert_eq!(files(x.path()), encoded);
}

#[test]
fn nan_velocity_is_a_validation_error_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(&small(2), dir.path()).unwrap();
    let csv = dir.path().join("samples/test-0001.csv");
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut cols: Vec<&str> = lines[5].split(',').collect();
    cols[6] = "NaN";
    lines[5] = cols.join(",");
    fs::write(&csv, lines.join("\n") + "\n").unwrap();
    match read_dataset(dir.path()) {
        Err(Error::Core(airbench::core::Error::Validation { sample, message })) => {
            assert_eq!(sample, "test-0001");
            assert!(message.starts_with("u_x"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn missing_sample_file_is_a_format_error_naming_the_id() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(&small(2), dir.path()).unwrap();
    fs::remove_file(dir.path().join("samples/test-0000.csv")).unwrap();
    match read_dataset(dir.path()) {
        Err(e @ Error::Format { .. }) => assert!(e.to_string().contains("test-0000"), "{e}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn corrupt_manifest_reports_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(&small(1), dir.path()).unwrap();
    fs::write(dir.path().join(MANIFEST), "{\n  \"split\": \"test\",\n  oops\n}").unwrap();
    match read_dataset(dir.path()) {
        Err(e @ Error::Format { line: Some(3), .. }) => assert!(e.to_string().contains(MANIFEST), "{e}"),
        other => panic!("{other:?}"),
    }
    fs::remove_file(dir.path().join(MANIFEST)).unwrap();
    assert!(matches!(read_dataset(dir.path()), Err(Error::Format { .. })));
}

#[test]
fn malformed_row_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    write_dataset(&small(1), dir.path()).unwrap();
    let csv = dir.path().join("samples/test-0000.csv");
    let mut text = fs::read_to_string(&csv).unwrap();
    text = text.replacen(",1,", ",yes,", 1);
    fs::write(&csv, text).unwrap();
    match read_dataset(dir.path()) {
        Err(e @ Error::Format { line: Some(2), .. }) => assert!(e.to_string().contains("is_surf"), "{e}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn invalid_dataset_is_rejected_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let mut d = small(1);
    d.samples[0].truth_fields.nu_t[50] = -1.0;
    let e = write_dataset(&d, dir.path().join("out").as_path()).unwrap_err();
    assert!(e.to_string().contains("nu_t: negative value"), "{e}");
    assert!(!dir.path().join("out").exists());
}

#[test]
fn generated_train_split_digest_is_pinned() {
    let d = generate_split(&GenerationConfig::default(), Split::Train, "").unwrap();
    assert_eq!(d.samples.len(), 103);
    let digest = dataset_digest(&d);
    let dir = tempfile::tempdir().unwrap();
    write_dataset(&d, dir.path()).unwrap();
    assert_eq!(dataset_digest(&read_dataset(dir.path()).unwrap()), digest);
    assert_eq!(digest, "494fa9e8cecbec4bc2705c99e63ca29083ad66a129431f7b0431af005a9b6909");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn round_trip_of_random_samples(
        thickness in 0.03f64..0.2,
        camber in -0.1f64..0.1,
        alpha in -0.3f64..0.3,
        u in 0.1f64..50.0,
        seed in any::<u64>(),
        scale in prop::sample::select(vec![1e-300, 1e-7, 1.0, 3.3e5, 1e300]),
    ) {
        let mut s = sample_point_cloud(&JoukowskiParams::new(-thickness, camber, 0.25, alpha, u), 64, seed).unwrap();
        s.id = format!("s{seed}");
        s.truth_fields.nu_t.iter_mut().for_each(|v| *v *= scale);
        s.meta.solver_time_s = scale;
        let d = Dataset { split: Split::OodTest, samples: vec![s], generation_config_digest: "x".into() };
        let dir = tempfile::tempdir().unwrap();
        write_dataset(&d, dir.path()).unwrap();
        prop_assert_eq!(read_dataset(dir.path()).unwrap(), d);
    }
}
