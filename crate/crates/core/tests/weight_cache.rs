use fusionkit::root_system;
use fusionkit::weights::{racah_multiplicities, Limits, WeightCache};
use fusionkit::Weight;

#[test]
fn weight_systems_persist_to_disk() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = root_system("A2").unwrap();
    let lambda = Weight::from([3, 2]);
    let first = WeightCache::new(8, Some(dir.path().to_path_buf()));
    let ws = first.get_or_compute(&a2, &lambda, &Limits::default()).unwrap();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);

    let text = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["mults"].as_array().unwrap().len(), 27);

    let second = WeightCache::new(8, Some(dir.path().to_path_buf()));
    let loaded = second.get_or_compute(&a2, &lambda, &Limits::default()).unwrap();
    assert_eq!(*loaded, *ws);
    assert_eq!(*loaded, racah_multiplicities(&a2, &lambda).unwrap());
}

#[test]
fn unreadable_cache_files_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = root_system("B2").unwrap();
    let lambda = Weight::from([1, 1]);
    let cache = WeightCache::new(8, Some(dir.path().to_path_buf()));
    cache.get_or_compute(&b2, &lambda, &Limits::default()).unwrap();
    for f in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(f.unwrap().path(), "not json").unwrap();
    }
    let fresh = WeightCache::new(8, Some(dir.path().to_path_buf()));
    let ws = fresh.get_or_compute(&b2, &lambda, &Limits::default()).unwrap();
    assert_eq!(*ws, racah_multiplicities(&b2, &lambda).unwrap());
}
