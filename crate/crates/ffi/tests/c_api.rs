use std::ffi::{CStr, CString};
use std::ptr;

use bidim_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = bidim_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

// A hash sign: two horizontals crossed by two verticals.
const HASH: &str = r#"{"polysegments": [
    [[0, 1], [4, 1]], [[0, 3], [4, 3]],
    [[1, 0], [1, 4]], [[3, 0], [3, 4]]
]}"#;

#[test]
fn arrangement_round_trip() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(bidim_arrangement_from_json(c(HASH).as_ptr(), &mut a), BidimStatus::Ok);
        let (mut len, mut xi) = (0, 0);
        assert_eq!(bidim_arrangement_len(a, &mut len), BidimStatus::Ok);
        assert_eq!(bidim_arrangement_xi(a, &mut xi), BidimStatus::Ok);
        assert_eq!((len, xi), (4, 2));

        let mut passed = false;
        assert_eq!(bidim_planarize_check(a, &mut passed), BidimStatus::Ok);
        assert!(passed);

        let mut g = ptr::null_mut();
        assert_eq!(bidim_intersection_graph(a, &mut g), BidimStatus::Ok);
        let (mut n, mut m) = (0, 0);
        assert_eq!(bidim_graph_counts(g, &mut n, &mut m), BidimStatus::Ok);
        assert_eq!((n, m), (4, 4));

        let (mut lo, mut hi, mut tw) = (0, 0, 0);
        assert_eq!(bidim_treewidth_bounds(g, &mut lo, &mut hi), BidimStatus::Ok);
        assert_eq!(bidim_treewidth_exact(g, 16, &mut tw), BidimStatus::Ok);
        assert!(lo <= tw && tw <= hi);
        assert_eq!(tw, 2);

        let mut yes = false;
        let mut report = ptr::null_mut();
        assert_eq!(bidim_solve_vc(g, xi, 1, &mut yes, &mut report), BidimStatus::Ok);
        assert!(!yes);
        bidim_string_free(report);
        assert_eq!(bidim_solve_vc(g, xi, 2, &mut yes, ptr::null_mut()), BidimStatus::Ok);
        assert!(yes);

        let mut text = ptr::null_mut();
        assert_eq!(bidim_graph_to_json(g, &mut text), BidimStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(bidim_graph_from_json(text, &mut back), BidimStatus::Ok);
        let (mut n2, mut m2) = (0, 0);
        bidim_graph_counts(back, &mut n2, &mut m2);
        assert_eq!((n2, m2), (4, 4));
        bidim_string_free(text);
        bidim_graph_free(back);
        bidim_graph_free(g);
        bidim_arrangement_free(a);
    }
}

#[test]
fn report_is_json() {
    unsafe {
        let mut g = ptr::null_mut();
        let json = r#"{"vertices": [0, 1, 2], "edges": [[0, 0, 1], [1, 1, 2]]}"#;
        assert_eq!(bidim_graph_from_json(c(json).as_ptr(), &mut g), BidimStatus::Ok);
        let mut yes = false;
        let mut report = ptr::null_mut();
        assert_eq!(bidim_solve_vc(g, 0, 1, &mut yes, &mut report), BidimStatus::Ok);
        assert!(yes);
        let text = CStr::from_ptr(report).to_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(text).unwrap();
        assert_eq!(v["route"], "dp");
        bidim_string_free(report);
        bidim_graph_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(
            bidim_arrangement_from_json(ptr::null(), &mut a),
            BidimStatus::NullArgument
        );
        assert_eq!(bidim_arrangement_from_json(c("{").as_ptr(), &mut a), BidimStatus::Parse);
        assert!(a.is_null());
        // Three segments through one point.
        let triple = r#"{"polysegments": [[[0,0],[2,2]], [[0,2],[2,0]], [[1,0],[1,2]]]}"#;
        assert_eq!(
            bidim_arrangement_from_json(c(triple).as_ptr(), &mut a),
            BidimStatus::Parse
        );
        assert!(!last_error().is_empty());

        let mut g = ptr::null_mut();
        let json = r#"{"vertices": [0, 1], "edges": [[0, 0, 5]]}"#;
        assert_eq!(bidim_graph_from_json(c(json).as_ptr(), &mut g), BidimStatus::Parse);

        let mut n = 0;
        assert_eq!(bidim_arrangement_len(ptr::null(), &mut n), BidimStatus::NullArgument);
        assert_eq!(last_error(), "null argument");
    }
}

#[test]
fn exact_treewidth_respects_the_cap() {
    unsafe {
        let edges: Vec<String> = (0..20).map(|i| format!("[{i}, {i}, {}]", i + 1)).collect();
        let vertices: Vec<String> = (0..21).map(|i| i.to_string()).collect();
        let json = format!(
            r#"{{"vertices": [{}], "edges": [{}]}}"#,
            vertices.join(","),
            edges.join(",")
        );
        let mut g = ptr::null_mut();
        assert_eq!(bidim_graph_from_json(c(&json).as_ptr(), &mut g), BidimStatus::Ok);
        let mut tw = 0;
        assert_eq!(bidim_treewidth_exact(g, 10, &mut tw), BidimStatus::CapExceeded);
        assert_eq!(bidim_treewidth_exact(g, 21, &mut tw), BidimStatus::Ok);
        assert_eq!(tw, 1);
        bidim_graph_free(g);
    }
}
