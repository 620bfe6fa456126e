use sha2::{Digest, Sha256};

use lkm_core::data::{all_cases, CASE_SOURCES};

/// Frozen digests of the embedded case files.
const DIGESTS: [(&str, &str); 12] = [
    ("A_1_0", "f92d15a5bcb939c0f8ddc90400be8afbbac3d968b3ca1941d94e98192f1f304f"),
    ("A_1_I", "dedffb8d042932c14a886acc18f4047b2ca707e37fca198caf3b0dfff14d63ae"),
    ("A_1_II", "9b423fc0f1c376d2c60a4a674adf5220a1a3243010532e37d57f9a706638e706"),
    ("A_1_III", "eed586db032407796222296358b74a30d5c81ffaa9dd919965e17fa1276f86fc"),
    ("A_2_0", "e1ec8425ddf403945a43251d51b6ed09584b01dc4a25805a98a2fbe41467481a"),
    ("A_2_I", "fa3df25a7fa314746d6c70b113cebe8e6256595bb15ae718a26428b00b093f8d"),
    ("A_2_II", "74284c24ff4eb805083704a107148241b1e27e1786159bbf03a0a7662cb6042c"),
    ("A_2_III", "246c8ffb136ffcdc1a871ff5aea5d9afb7dcb585e508b94555c3531b510cf16e"),
    ("A_3_0", "25e516c1a70be796ee6df371866ba55cdbe97606e13d61f3de81ea52697481f6"),
    ("A_3_I", "93ea6632cc8220a0c705212870cee8f5e1dd1dd679e2bd1ff9b869bda04f2a63"),
    ("A_3_II", "0895292d0368ee499732e563b0f0d363289f3c7cf4d581d1a6b48b7f1d6c995c"),
    ("A_3_III", "7e2dc6208447df4c70c44c18b400789137fbcf9226b5e5b9d38b1e7083515f8a"),
];

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn case_files_are_unchanged() {
    for ((name, text), (want_name, want)) in CASE_SOURCES.iter().zip(DIGESTS) {
        assert_eq!(*name, want_name);
        assert_eq!(hex(&Sha256::digest(text.as_bytes())), want, "{name}");
    }
}

#[test]
fn cartan_matrices_are_symmetric_with_diagonal_two() {
    for case in all_cases() {
        let a = &case.cartan_matrix;
        for (i, row) in a.iter().enumerate() {
            assert_eq!(row.len(), a.len(), "{}", case.name);
            assert_eq!(row[i], 2, "{}", case.name);
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, a[j][i], "{} ({i},{j})", case.name);
                assert!(i == j || *x <= 0, "{} ({i},{j})", case.name);
            }
        }
        assert_eq!(case.expected_angles.len(), a.len(), "{}", case.name);
    }
}
