//! Apply fusion policies to one key's candidate values.

use coevo::resolution::{NoEnv, ResolveKey, ValueMetadata};
use coevo::semantics::PropertyProfile;
use coevo::{auto_select_policy, resolve, Iri, Literal, PolicyFunction, ResolutionPolicy, Term};

fn main() {
    let subject = Term::iri("http://dbpedia.org/resource/Adrian_Sanders").unwrap();
    let predicate = Iri::new("http://dbpedia.org/property/birthYear").unwrap();
    let key = ResolveKey {
        subject: &subject,
        predicate: &predicate,
    };
    let int = |v: &str| {
        Term::Literal(Literal::typed(
            v,
            Iri::new("http://www.w3.org/2001/XMLSchema#integer").unwrap(),
        ))
    };
    let candidates = vec![
        (int("1959"), ValueMetadata::new("source", 1)),
        (int("1960"), ValueMetadata::new("target", 2)),
        (int("1958"), ValueMetadata::new("existing", 0)),
    ];

    let profile = PropertyProfile::default_for(&predicate);
    let values: Vec<Term> = candidates.iter().map(|(t, _)| t.clone()).collect();
    println!("auto-selected: {}", auto_select_policy(&profile, &values).function.name());

    for f in [
        PolicyFunction::Max,
        PolicyFunction::Min,
        PolicyFunction::Average,
        PolicyFunction::Median,
        PolicyFunction::First,
        PolicyFunction::Longest,
        PolicyFunction::Concatenation,
    ] {
        let r = resolve(key, &candidates, &ResolutionPolicy::new(f), &NoEnv).unwrap();
        let kept: Vec<String> = r.kept.iter().map(ToString::to_string).collect();
        println!("{:>14}: {}", f.name(), kept.join(", "));
    }

    for seed in 0..4 {
        let policy = ResolutionPolicy::new(PolicyFunction::Any).with_seed(seed);
        let r = resolve(key, &candidates, &policy, &NoEnv).unwrap();
        println!("any, seed {seed}: {}", r.kept[0]);
    }

    match resolve(key, &candidates, &ResolutionPolicy::new(PolicyFunction::Latest), &NoEnv) {
        Ok(_) => unreachable!(),
        Err(e) => println!("latest without timestamps: {e}"),
    }
}
