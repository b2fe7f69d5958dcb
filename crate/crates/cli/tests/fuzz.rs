//! Malformed argument vectors must be rejected with status 1, never a panic.

use fdqe_cli::run;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VALID: &[&[&str]] = &[
    &["check", "3,2", "--lang", "min"],
    &["check", "2", "--json"],
    &["sweep", "--bound", "3"],
    &["embeddings", "1,1", "2,1", "--lang", "sim"],
    &["render", "m.json"],
    &[
        "predicates",
        "--algebra",
        "2",
        "--op",
        "rho-min",
        "--input",
        "x.json",
    ],
    &[
        "preserve",
        "1",
        "2",
        "--matrix",
        "m.json",
        "--predicate",
        "rho-sim",
        "--samples",
        "4",
    ],
];

const BAD_ALGEBRAS: &[&str] = &[
    "",
    "0",
    "-1",
    "3,,2",
    ",",
    "a",
    "2,x",
    "1.5",
    "2;1",
    "99999999999999999999",
    "+3",
    "3,-2",
];
const BAD_VALUES: &[(&str, &str)] = &[
    ("--lang", "plain"),
    ("--lang", ""),
    ("--bound", "0"),
    ("--bound", "-3"),
    ("--bound", "ten"),
    ("--samples", "0"),
    ("--restarts", "0"),
    ("--seed", "-1"),
    ("--op", "rho"),
    ("--predicate", "min"),
    ("--style", "dotted"),
    ("--max-iterations", "0"),
];

fn junk(rng: &mut ChaCha8Rng) -> String {
    let len = rng.random_range(1..12);
    (0..len)
        .map(|_| rng.random_range(b'!'..=b'~') as char)
        .collect()
}

/// A valid command with one mutation that is guaranteed to make it invalid.
fn malformed(rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut args: Vec<String> = VALID
        .choose(rng)
        .unwrap()
        .iter()
        .map(|s| s.to_string())
        .collect();
    match rng.random_range(0..7) {
        0 => {
            let pos = rng.random_range(0..=args.len());
            args.insert(
                pos.max(1),
                format!("--{}", junk(rng).replace('=', "").to_lowercase() + "zq"),
            );
        }
        1 => {
            // replace the first algebra-shaped positional or value
            let bad = BAD_ALGEBRAS.choose(rng).unwrap().to_string();
            let numeric = ["--bound", "--samples"];
            let slot = (0..args.len()).find(|&i| {
                args[i].chars().all(|c| c.is_ascii_digit() || c == ',')
                    && (i == 0 || !numeric.contains(&args[i - 1].as_str()))
            });
            if let Some(i) = slot {
                args[i] = bad;
            } else {
                args.push(bad);
            }
        }
        2 => {
            let (flag, value) = BAD_VALUES.choose(rng).unwrap();
            args.push(flag.to_string());
            args.push(value.to_string());
        }
        3 => {
            // drop the subcommand
            args.remove(0);
            if args.is_empty() || !args[0].starts_with('-') {
                args.insert(0, junk(rng));
            }
        }
        4 => args.push(format!("extra{}", junk(rng))),
        5 => {
            let flag = args
                .iter()
                .rposition(|a| a.starts_with("--") && a != "--json")
                .map(|i| args[i].clone());
            match flag {
                Some(f) => args.push(f.clone()),
                None => args.push("--lang".into()),
            }
            // a trailing flag without its value, or a duplicated flag
        }
        _ => {
            args[0] = format!("{}{}", args[0], junk(rng));
        }
    }
    args
}

#[test]
fn a_thousand_malformed_commands_exit_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..1000 {
        let args = malformed(&mut rng);
        let argv = std::iter::once("fdqe".to_string()).chain(args.iter().cloned());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut out, &mut err);
        let err = String::from_utf8(err).unwrap();
        assert_eq!(code, 1, "{args:?} gave {code}: {err}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}
