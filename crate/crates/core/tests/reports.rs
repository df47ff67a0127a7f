use seshadri_core::report::{
    audit_report, bound_report, example_report, from_json, to_csv, to_json, to_markdown, wps_report,
};
use seshadri_core::scalar::ratio;
use seshadri_core::wps::WeightedHypersurface;
use seshadri_core::{AuditGrid, PolarizedSurface, ReportItem, ReportStatus, Weights};

fn surface(spec: &str) -> PolarizedSurface {
    spec.parse().unwrap()
}

#[test]
fn canonical_pencil_tops_the_table() {
    let doc = bound_report(&surface("class=gt l2=1 r=1 pg=2"), 100, 6).unwrap();
    assert_eq!(doc.status, ReportStatus::Ok);
    let table = doc
        .items
        .iter()
        .find_map(|i| match i {
            ReportItem::BoundTable(t) => Some(t),
            _ => None,
        })
        .unwrap();
    let top = &table.all_points[0];
    assert_eq!(top.value.symbolic, ratio(1, 2));
    assert_eq!(top.value.decimal, "0.500000");
    assert!(top.certificates.iter().any(|c| c.sharp));
}

#[test]
fn projective_plane_single_row() {
    let doc = bound_report(&surface("class=p2"), 100, 6).unwrap();
    let ReportItem::BoundTable(table) = &doc.items[1] else {
        panic!()
    };
    assert_eq!(table.all_points.len(), 1);
    assert_eq!(table.all_points[0].value.symbolic, ratio(1, 1));
}

#[test]
fn documents_round_trip_through_json() {
    let docs = [
        bound_report(&surface("class=k3 l2=4"), 30, 10).unwrap(),
        bound_report(&surface("class=gt l2=3 r=3"), 100, 3).unwrap(),
        audit_report(
            &AuditGrid {
                k2: 1..=20,
                r: 1..=4,
                l2: 1..=4,
            },
            12,
        )
        .unwrap(),
        wps_report(
            &WeightedHypersurface::new(Weights::new([1, 1, 2, 4]).unwrap(), 10).unwrap(),
            6,
        ),
        example_report(30).unwrap(),
    ];
    for doc in docs {
        let json = to_json(&doc).unwrap();
        assert_eq!(from_json(&json).unwrap(), doc);
        assert_eq!(to_csv(&doc).unwrap(), to_csv(&from_json(&json).unwrap()).unwrap());
        assert!(!to_markdown(&doc).is_empty());
    }
}

#[test]
fn audit_csv_rows_are_ordered() {
    let doc = audit_report(
        &AuditGrid {
            k2: 1..=10,
            r: 1..=5,
            l2: 1..=1,
        },
        6,
    )
    .unwrap();
    let csv = to_csv(&doc).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("chain,k2,r,l2,lhs,rhs,verdict"));
    let keys: Vec<(String, u64, i64, u64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let num = |s: &str| s.parse::<i64>().unwrap_or(-1);
            (f[0].to_owned(), num(f[1]) as u64, num(f[2]), num(f[3]) as u64)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(csv.contains("B,9,3,1,0.333333,0.366025,fails"));
}
