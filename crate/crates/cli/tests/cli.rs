use std::path::PathBuf;
use std::process::{Command, Output};

use metaloop::catalog;
use metaloop::io::{self, ComposeSpecData, MapData, Payload, StructureFile, TableData, WreathSpecData};
use metaloop::products::FactorMaps;
use metaloop::topology::BaseFamily;
use metaloop::{FiniteTopology, Subset, WreathSpec};

struct Dir(PathBuf);

impl Dir {
    fn new(name: &str) -> Self {
        let p = std::env::temp_dir().join(format!("metaloop-cli-{name}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&p);
        std::fs::create_dir_all(&p).unwrap();
        Dir(p)
    }

    fn path(&self, f: &str) -> String {
        self.0.join(f).display().to_string()
    }

    fn save(&self, f: &str, file: &StructureFile) -> String {
        let p = self.path(f);
        io::save(&p, file).unwrap();
        p
    }

    fn write(&self, f: &str, text: &str) -> String {
        let p = self.path(f);
        std::fs::write(&p, text).unwrap();
        p
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metaloop")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn catalog_output_is_byte_stable() {
    let dir = Dir::new("catalog");
    let (a, b) = (dir.path("a.json"), dir.path("b.json"));
    assert_eq!(code(&run(&["catalog", "cd_basis", "3", "-o", &a])), 0);
    assert_eq!(code(&run(&["catalog", "cd_basis", "3", "-o", &b])), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let printed = run(&["catalog", "cd_basis", "3"]);
    assert_eq!(stdout(&printed).as_bytes(), std::fs::read(&a).unwrap());
    assert_eq!(io::load_table(&a, true).unwrap(), catalog::cd_basis(3).unwrap());
    assert_eq!(code(&run(&["catalog", "nope"])), 2);
}

#[test]
fn verify_levels_and_exit_codes() {
    let dir = Dir::new("verify");
    let m16 = dir.save("m16.json", &StructureFile::table(&catalog::cd_basis(3).unwrap()));
    assert_eq!(code(&run(&["verify", &m16, "--level", "central"])), 0);
    let o = run(&["verify", &m16, "--level", "group", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    let failed: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["witness"].as_array().unwrap().len(), 3);

    let bad = dir.write(
        "bad.json",
        r#"{"format_version": 1, "kind": "table", "order": 2, "table": [[0, 1], [1, 7]]}"#,
    );
    let o = run(&["verify", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("table[1][1]"));
    assert_eq!(code(&run(&["verify", &dir.path("missing.json")])), 2);
}

#[test]
fn coset_quotient_of_m16_by_center() {
    let dir = Dir::new("coset");
    let m16 = dir.save("m16.json", &StructureFile::table(&catalog::cd_basis(3).unwrap()));
    let center = dir.write("c.json", "[0, 1]");
    let q = dir.path("q.json");
    let o = run(&["coset", &m16, "--sub", &center, "--quotient-table", &q, "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let quo = io::load_table(&q, true).unwrap();
    assert_eq!(quo, catalog::elementary(3).unwrap());
}

#[test]
fn coset_failure_prints_witness() {
    let dir = Dir::new("coset-fail");
    let s3 = catalog::symmetric3();
    let t = (1..6).find(|&x| s3.mul(x, x) == 0).unwrap();
    let table = dir.save("s3.json", &StructureFile::table(&s3));
    let sub = dir.save("h.json", &StructureFile::subset(&Subset::new(6, [0, t]).unwrap()));
    // the coset condition holds but the quotient product is not well defined
    let o = run(&["coset", &table, "--sub", &sub, "--quotient-table", &dir.path("q.json"), "--format", "json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn transversal_with_nested_check() {
    let dir = Dir::new("transversal");
    let m16 = catalog::cd_basis(3).unwrap();
    let table = dir.save("m16.json", &StructureFile::table(&m16));
    let q8 = dir.write("q8.json", "[0, 1, 2, 3, 4, 5, 6, 7]");
    let c1 = dir.write("c1.json", "[0, 1]");
    let o = run(&["transversal", &table, "--sub", &q8, "--check-nested", "--c1", &c1]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS nested: "));
}

#[test]
fn smashed_product_with_factor_file() {
    let dir = Dir::new("product");
    let a = dir.save("a.json", &StructureFile::table(&catalog::cyclic(2).unwrap()));
    let b = dir.save("b.json", &StructureFile::table(&catalog::cyclic(4).unwrap()));
    // xi((a1, b1), (a2, b2)) = 2 when a1 = a2 = 1
    let xi: Vec<Vec<usize>> = (0..8).map(|x| (0..8).map(|y| if x / 4 == 1 && y / 4 == 1 { 2 } else { 0 }).collect()).collect();
    let maps = FactorMaps { xi: Some(xi), ..FactorMaps::default() };
    let factors = dir.save("f.json", &StructureFile::new(Payload::Factors(maps)));
    let out = dir.path("g.json");
    let o = run(&["product", "--mode", "smashed", "--a", &a, "--b", &b, "--factors", &factors, "--validate", "-o", &out]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS product: theta_B(B) invariant"));
    let g = io::load_table(&out, true).unwrap();
    assert_eq!(g.order(), 8);
    assert!(g.is_loop());

    let direct = run(&["product", "--mode", "direct", "--a", &a, "--b", &b, "--format", "json"]);
    assert_eq!(json(&direct)["class"], "group");
}

#[test]
fn compose_trivial_spec() {
    let dir = Dir::new("compose");
    let z2 = TableData::from_system(&catalog::cyclic(2).unwrap());
    let spec = ComposeSpecData {
        a1: z2.clone(),
        b1: z2.clone(),
        f1: FactorMaps::default(),
        a2: z2.clone(),
        b2: z2,
        f2: FactorMaps::default(),
        f3: None,
    };
    let path = dir.save("spec.json", &StructureFile::new(Payload::ComposeSpec(spec)));
    let o = run(&["compose", "--spec", &path, "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["order"], 16);
    // the literal three-factor decomposition fails by counting once |B2| > 1
    assert_eq!(code(&o), 1);
    let checks = v["checks"].as_array().unwrap();
    let failed: Vec<&str> = checks.iter().filter(|c| c["status"] == "fail").map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, vec!["d = (a1 a2) b with b in theta_B1(B1)"]);
}

#[test]
fn wreath_with_theta() {
    let dir = Dir::new("wreath");
    let mut spec = WreathSpec::trivial(catalog::cyclic(2).unwrap(), Subset::singleton(2, 0), catalog::cyclic(4).unwrap())
        .with_xi(|(_, b1), (_, b2)| if b1 % 2 == 1 && b2 % 2 == 1 { 2 } else { 0 });
    spec.c1 = vec![(0, 0), (0, 2)];
    let path = dir.save("w.json", &StructureFile::new(Payload::WreathSpec(WreathSpecData::from_spec(&spec))));
    let i = dir.write("i.json", "[0, 1]");
    let j = dir.save("j.json", &StructureFile::new(Payload::Map(MapData { map: vec![0, 3, 2, 1] })));
    let o = run(&["wreath", "--spec", &path, "--theta", "--i", &i, "--j", &j]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS theta(g / g1) = theta(g) / theta(g1)"));

    let not_aut = dir.write("k.json", "[0, 2, 1, 3]");
    assert_eq!(code(&run(&["wreath", "--spec", &path, "--theta", "--i", &i, "--j", &not_aut])), 1);
    let small = run(&["wreath", "--spec", &path, "--max-size", "8"]);
    assert_eq!(code(&small), 3);
}

#[test]
fn topology_checks() {
    let dir = Dir::new("topology");
    let z2 = catalog::cyclic(2).unwrap();
    let table = dir.save("z2.json", &StructureFile::table(&z2));
    let discrete = dir.save("d.json", &StructureFile::topology(&FiniteTopology::discrete(2).unwrap()));
    let base = dir.save("b.json", &StructureFile::base(&BaseFamily::discrete(2)));
    let o = run(&["topology", "--table", &table, "--top", &discrete, "--check-base", &base]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let sierpinski = dir.write(
        "s.json",
        r#"{"format_version": 1, "kind": "topology", "size": 2, "opens": [[], [1], [0, 1]]}"#,
    );
    let o = run(&["topology", "--table", &table, "--top", &sierpinski, "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let mul = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "multiplication continuous").unwrap();
    assert_eq!(mul["status"], "fail");
    assert!(!mul["witness"].as_array().unwrap().is_empty());

    let o = run(&["topology", "--w-sets", "--v", "2", "--b", &table]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&run(&["topology"])), 2);
}

#[test]
fn search_is_independent_of_jobs() {
    let one = json(&run(&["search", "--order", "5", "--predicate", "group", "--jobs", "1", "--format", "json"]));
    let four = json(&run(&["search", "--order", "5", "--predicate", "group", "--jobs", "4", "--format", "json"]));
    assert_eq!(one, four);
    assert_eq!(one["matched"], 6);
    assert_eq!(one["total"], 56);
    assert_eq!(code(&run(&["search", "--order", "7"])), 3);
    let r = run(&["search", "--order", "7", "--seed", "9", "--samples", "3", "--format", "json"]);
    assert_eq!(code(&r), 0);
    assert_eq!(json(&r)["exhaustive"], false);
    assert_eq!(code(&run(&["search", "--order", "4", "--predicate", "bogus"])), 2);
}
