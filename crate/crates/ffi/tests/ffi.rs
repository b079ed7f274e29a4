use std::ffi::CStr;
use std::ptr;

use dbseq_ffi::*;

const RPMX_33: &str = "000 001 010 101 011 111 110 100 002 021 210 102 020 201 012 121 \
                       211 112 120 202 022 221 212 122 222 220 200";

fn digits(s: &str) -> Vec<u32> {
    s.bytes().map(|b| u32::from(b - b'0')).collect()
}

fn render(w: &[u32]) -> String {
    w.iter().map(|s| s.to_string()).collect()
}

#[test]
fn generate_and_read_back() {
    unsafe {
        let mut seq = ptr::null_mut();
        let st = dbs_generate(DBS_METHOD_FKM, DBS_VARIANT_RPMX, 3, 3, 0, &mut seq);
        assert_eq!(st, DbsStatus::Ok);
        let mut len = 0;
        assert_eq!(dbs_sequence_len(seq, &mut len), DbsStatus::Ok);
        assert_eq!(len, 27);
        let mut n = 0;
        assert_eq!(dbs_sequence_n(seq, &mut n), DbsStatus::Ok);
        assert_eq!(n, 3);
        let mut words = Vec::new();
        let mut buf = [0u32; 3];
        for i in 0..len {
            assert_eq!(dbs_sequence_word(seq, i, buf.as_mut_ptr()), DbsStatus::Ok);
            words.push(render(&buf));
        }
        assert_eq!(
            words.join(" "),
            RPMX_33.split_whitespace().collect::<Vec<_>>().join(" ")
        );
        assert_eq!(
            dbs_sequence_word(seq, 27, buf.as_mut_ptr()),
            DbsStatus::InvalidArgument
        );

        let mut small = [0u32; 26];
        assert_eq!(
            dbs_sequence_symbols(seq, small.as_mut_ptr(), small.len()),
            DbsStatus::BufferTooSmall
        );
        let mut symbols = [0u32; 27];
        assert_eq!(
            dbs_sequence_symbols(seq, symbols.as_mut_ptr(), 27),
            DbsStatus::Ok
        );
        assert_eq!(&symbols[..8], &[0, 1, 0, 1, 1, 1, 0, 0]);

        let mut pass = false;
        assert_eq!(dbs_check_db(seq, 3, &mut pass), DbsStatus::Ok);
        assert!(pass);
        dbs_sequence_free(seq);
    }
}

#[test]
fn generate_rejects_bad_arguments() {
    unsafe {
        let mut seq = ptr::null_mut();
        assert_eq!(
            dbs_generate(9, DBS_VARIANT_PMX, 3, 3, 0, &mut seq),
            DbsStatus::InvalidArgument
        );
        assert_eq!(
            dbs_generate(DBS_METHOD_FKM, 9, 3, 3, 0, &mut seq),
            DbsStatus::InvalidArgument
        );
        assert_eq!(
            dbs_generate(DBS_METHOD_FKM, DBS_VARIANT_PMN, 0, 3, 0, &mut seq),
            DbsStatus::InvalidArgument
        );
        assert_eq!(
            dbs_generate(DBS_METHOD_FKM, DBS_VARIANT_PMN, 5, 3, 100, &mut seq),
            DbsStatus::ResourceLimit
        );
        assert_eq!(
            dbs_generate(DBS_METHOD_FKM, DBS_VARIANT_PMN, 3, 3, 0, ptr::null_mut()),
            DbsStatus::NullPointer
        );
        assert!(seq.is_null());
        dbs_sequence_free(ptr::null_mut());
    }
}

#[test]
fn stream_prefix_matches_complete_sequence() {
    unsafe {
        let mut stream = ptr::null_mut();
        assert_eq!(dbs_stream_rpmx(3, 27, 0, &mut stream), DbsStatus::Ok);
        let mut full = ptr::null_mut();
        assert_eq!(
            dbs_generate(DBS_METHOD_CYCLE_JOIN, DBS_VARIANT_RPMX, 3, 3, 0, &mut full),
            DbsStatus::Ok
        );
        let (mut a, mut b) = ([0u32; 27], [0u32; 27]);
        dbs_sequence_symbols(stream, a.as_mut_ptr(), 27);
        dbs_sequence_symbols(full, b.as_mut_ptr(), 27);
        assert_eq!(a, b);
        assert_eq!(
            dbs_stream_rpmx(3, 101, 100, &mut stream),
            DbsStatus::ResourceLimit
        );
        dbs_sequence_free(stream);
        dbs_sequence_free(full);
    }
}

#[test]
fn successor_rules() {
    unsafe {
        let mut out = [0u32; 3];
        let w = digits("102");
        assert_eq!(dbs_succ(w.as_ptr(), 3, 3, out.as_mut_ptr()), DbsStatus::Ok);
        assert_eq!(render(&out), "020");
        let t = digits("200");
        assert_eq!(
            dbs_succ(t.as_ptr(), 3, 3, out.as_mut_ptr()),
            DbsStatus::EndOfSequence
        );
        assert_eq!(dbs_succ(t.as_ptr(), 3, 0, out.as_mut_ptr()), DbsStatus::Ok);
        assert_eq!(out, [0, 0, 3]);
        let bad = digits("300");
        assert_eq!(
            dbs_succ(bad.as_ptr(), 3, 3, out.as_mut_ptr()),
            DbsStatus::InvalidArgument
        );
        assert_eq!(
            dbs_succ(ptr::null(), 3, 3, out.as_mut_ptr()),
            DbsStatus::NullPointer
        );

        let w = digits("120");
        assert_eq!(dbs_next(w.as_ptr(), 3, 3, out.as_mut_ptr()), DbsStatus::Ok);
        assert_eq!(render(&out), "202");
        let w = digits("100");
        assert_eq!(
            dbs_next_inv(w.as_ptr(), 3, 3, out.as_mut_ptr()),
            DbsStatus::Ok
        );
        assert_eq!(render(&out), "002");
        let w = digits("002");
        assert_eq!(
            dbs_pmx_successor(w.as_ptr(), 3, 3, out.as_mut_ptr()),
            DbsStatus::Ok
        );
        assert_eq!(render(&out), "022");

        let mut last = false;
        assert_eq!(
            dbs_is_last(digits("102").as_ptr(), 3, &mut last),
            DbsStatus::Ok
        );
        assert!(last);
        assert_eq!(
            dbs_keyword_of(digits("021").as_ptr(), 3, out.as_mut_ptr()),
            DbsStatus::Ok
        );
        assert_eq!(render(&out), "102");
    }
}

#[test]
fn trace_handles() {
    unsafe {
        let mut trace = ptr::null_mut();
        assert_eq!(dbs_join_build(3, 3, 0, &mut trace), DbsStatus::Ok);
        let mut count = 0;
        assert_eq!(dbs_trace_cycle_count(trace, &mut count), DbsStatus::Ok);
        assert_eq!(count, 11);
        let mut len = 0;
        assert_eq!(dbs_trace_len(trace, &mut len), DbsStatus::Ok);
        assert_eq!(len, 27);

        let mut info = DbsCycleInfo {
            index: 0,
            open_position: 0,
            close_position: 0,
            has_anchor: true,
        };
        assert_eq!(dbs_trace_cycle(trace, 0, &mut info), DbsStatus::Ok);
        assert!(!info.has_anchor);
        assert_eq!(dbs_trace_cycle(trace, 10, &mut info), DbsStatus::Ok);
        assert!(info.has_anchor);
        let mut key = [0u32; 3];
        assert_eq!(
            dbs_trace_cycle_key(trace, 10, key.as_mut_ptr()),
            DbsStatus::Ok
        );
        assert_eq!(render(&key), "222");
        let mut anchor = [0u32; 3];
        assert_eq!(
            dbs_trace_word(trace, info.open_position - 1, anchor.as_mut_ptr()),
            DbsStatus::Ok
        );
        assert_eq!(render(&anchor), "122");
        assert_eq!(
            dbs_trace_cycle(trace, 11, &mut info),
            DbsStatus::InvalidArgument
        );

        let mut pos = 0;
        let w = digits("002");
        assert_eq!(
            dbs_trace_position_of(trace, w.as_ptr(), 3, &mut pos),
            DbsStatus::Ok
        );
        assert_eq!(pos, 8);
        let long = digits("0002");
        assert_eq!(
            dbs_trace_position_of(trace, long.as_ptr(), 4, &mut pos),
            DbsStatus::NotFound
        );

        let mut pass = false;
        assert_eq!(dbs_check_structure(trace, &mut pass), DbsStatus::Ok);
        assert!(pass);

        let mut seq = ptr::null_mut();
        assert_eq!(dbs_trace_sequence(trace, &mut seq), DbsStatus::Ok);
        assert_eq!(dbs_check_db(seq, 3, &mut pass), DbsStatus::Ok);
        assert!(pass);
        dbs_sequence_free(seq);
        dbs_trace_free(trace);
        dbs_trace_free(ptr::null_mut());
    }
}

#[test]
fn status_messages() {
    let msg = |c: u32| {
        unsafe { CStr::from_ptr(dbs_status_message(c)) }
            .to_str()
            .unwrap()
    };
    assert_eq!(msg(DbsStatus::Ok as u32), "ok");
    assert_eq!(msg(DbsStatus::EndOfSequence as u32), "end of sequence");
    assert_eq!(msg(99), "unknown status");
}

fn header() -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/dbseq.h");
    std::fs::read_to_string(path).expect("header written by build.rs")
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for name in [
        "dbs_generate",
        "dbs_stream_rpmx",
        "dbs_sequence_free",
        "dbs_sequence_word",
        "dbs_sequence_symbols",
        "dbs_succ",
        "dbs_next",
        "dbs_next_inv",
        "dbs_pmx_successor",
        "dbs_is_last",
        "dbs_keyword_of",
        "dbs_join_build",
        "dbs_trace_position_of",
        "dbs_trace_cycle",
        "dbs_trace_free",
        "dbs_check_db",
        "dbs_check_structure",
        "dbs_status_message",
        "typedef struct DbsSequence DbsSequence;",
        "typedef struct DbsTrace DbsTrace;",
        "DBS_STATUS_END_OF_SEQUENCE = 3",
        "#define DBS_VARIANT_RPMN 3",
    ] {
        assert!(h.contains(name), "header is missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let src = std::path::Path::new(dir).join("header_check.c");
    std::fs::write(
        &src,
        "#include \"dbseq.h\"\nint main(void) { DbsSequence *s = 0; size_t n = 0;\n\
         return dbs_sequence_len(s, &n) == DBS_STATUS_NULL_POINTER ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "cc rejected the generated header"),
        Err(e) => panic!("no C compiler available to check the header: {e}"),
    }
}

/// Links a C program against the static library and walks `rpmx(3, 2)`.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libdbseq_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("walk.c");
    let bin = dir.join("walk");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "dbseq.h"
int main(void) {
    uint32_t w[3] = {0, 0, 0}, next[3];
    int steps = 0;
    DbsStatus st;
    for (;;) {
        printf("%u%u%u\n", w[0], w[1], w[2]);
        st = dbs_succ(w, 3, 2, next);
        if (st != DBS_STATUS_OK) break;
        w[0] = next[0]; w[1] = next[1]; w[2] = next[2];
        steps++;
    }
    return st == DBS_STATUS_END_OF_SEQUENCE && steps == 7 ? 0 : 1;
}
"#,
    )
    .unwrap();
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("running cc");
    assert!(
        status.success(),
        "linking against the static library failed"
    );
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "000\n001\n010\n101\n011\n111\n110\n100\n"
    );
}
