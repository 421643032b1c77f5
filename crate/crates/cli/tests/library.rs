use cli::fixtures::{self, FIXTURES};
use cli::{run, Binding, Command, Format, RunConfig};

#[test]
fn every_fixture_parses_at_version_one() {
    for (name, _) in FIXTURES {
        let f = fixtures::load(name).unwrap();
        assert_eq!(f.version, 1, "{name}");
        assert!(!f.rows.is_empty(), "{name}");
        assert!(f.header.iter().any(|h| h.split('|').count() == f.rows[0].len()), "{name}");
    }
    assert!(fixtures::load("missing").is_err());
}

#[test]
fn fixture_parser_rejects_malformed_files() {
    assert!(fixtures::parse("t", "a | b\n").is_err());
    assert!(fixtures::parse("t", "# version 1\na | b\nc\n").is_err());
    let f = fixtures::parse("t", "# version 2\n\nk | 1, 2,3\n").unwrap();
    assert_eq!(fixtures::int_list(&f.row("k").unwrap()[0]).unwrap(), [1, 2, 3]);
    assert!(f.row("z").is_err());
    assert!(fixtures::int_list("1, x").is_err());
}

#[test]
fn binding_parse() {
    assert_eq!(Binding::parse("symbolic", &[0]).unwrap(), Binding::Symbolic);
    assert_eq!(Binding::parse("-7", &[]).unwrap(), Binding::Value(-7));
    assert_eq!(Binding::parse("1", &[0, 1]).unwrap(), Binding::Value(1));
    assert!(Binding::parse("2", &[0, 1]).is_err());
    assert!(Binding::parse("one", &[]).is_err());
    assert_eq!(Binding::Value(3).to_string(), "3");
}

#[test]
fn ranks_table_in_process() {
    let mut cfg = RunConfig::new(Command::Table { name: "purity".into() });
    cfg.format = Format::Csv;
    let out = run(&cfg).unwrap();
    assert_eq!(out.status, 0);
    assert_eq!(out.output.lines().count(), 7, "{}", out.output);
    assert!(out.output.starts_with("r,from,to,class\n"));
}
