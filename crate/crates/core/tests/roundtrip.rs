use diffmod::cli::json::{parse_matrix, MatrixInput, SpectrumJson};
use diffmod::cli::parse::{parse_operator, print};
use diffmod::cli::run::{run, Command, JobSpec, Report};
use diffmod::gen::Gen;
use diffmod::spectrum::spectrum_of_operator;

const CORPUS: &[&str] = &[
    "D",
    "D^2",
    "D - 1",
    "D + 1/2",
    "D - 1/S",
    "D - S",
    "D^2 - 1/S",
    "D^2 - (1/S)",
    "(D - 1/S)*(D - 2)",
    "(D - 2)*(D - 1/S)",
    "D^3 - S^(-2)*D",
    "S^(1/2)*D",
    "D - S^(-1/2)",
    "D^2 + S^(1/3)*D - 1",
    "D*S",
    "S*D",
    "D^2*S^2",
    "(D - 1/3)*(D - 2/3)",
    "(D - S^(-2) - 1)*(D - 1/S)*(D - 1/4)",
    "D^4 - S^(-3)",
    "D^2 - 2*D + 1",
    "3*D^2 - S",
    "-D",
    "(1 + S)*D - 1",
    "D^2 + (S^(-1) - S)*D + 5/7",
    "D^3 + S^(-1/2)*D^2 - S^(3/2)",
    "1/2*D^2 - 1/3*S^(-1)*D + 1/4*S^(-2)",
    "(D - S^(-1/3))*(D + S^(-2/3))",
    "S^(-5)*D + 1",
    "D^5",
    "(D + 1)^3",
    "(S^2 + 1)*(D - 1)",
];

#[test]
fn print_then_parse_is_the_identity() {
    assert!(CORPUS.len() >= 30);
    for text in CORPUS {
        let p = parse_operator(text, 20).unwrap();
        let printed = print(&p);
        let back = parse_operator(&printed, 20).unwrap();
        assert_eq!(back, p, "{text} -> {printed}");
        assert_eq!(print(&back), printed, "printing is canonical for {text}");
    }
}

#[test]
fn random_operators_round_trip() {
    let mut g = Gen::new(11);
    for _ in 0..40 {
        let deg = g.range(0, 3) as usize;
        let ram = g.range(1, 3) as u32;
        let p = g.operator(deg, ram, -4, 4);
        let printed = print(&p);
        let back = parse_operator(&printed, 20).unwrap();
        assert_eq!(back.reduce_ram(), p.reduce_ram(), "{printed}");
    }
}

#[test]
fn spectrum_json_round_trips() {
    for text in CORPUS {
        let p = parse_operator(text, 20).unwrap().make_monic(30).unwrap();
        let sp = spectrum_of_operator(&p).unwrap();
        let json = serde_json::to_string(&SpectrumJson::from(&sp)).unwrap();
        let back: SpectrumJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_spectrum().unwrap(), sp, "{text}: {json}");
    }
}

#[test]
fn report_json_round_trips() {
    for text in ["D", "(D - 1/S)*(D - 2)", "D^2 - 1/S"] {
        let report = run(&JobSpec::operator(Command::Spectrum, text)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.spectrum, report.spectrum);
        assert_eq!(back.polygon, report.polygon);
        assert_eq!(back.slopes, report.slopes);
    }
}

#[test]
fn matrix_json_round_trips() {
    let text = r#"{"n": 2, "ram": 2, "entries": [["S^(-1/2)", "0"], ["1", "1/3 + S"]]}"#;
    let m = parse_matrix(text, 20).unwrap();
    let again = MatrixInput::from_module(&m);
    let back = again.to_module(20).unwrap();
    assert_eq!(back, m);
    assert_eq!(again.ram, 2);
}
