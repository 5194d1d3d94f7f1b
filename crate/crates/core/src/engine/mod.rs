//! Recognition of quasiperfect graphs and their certificates.

pub mod certificate;
pub mod prime;
pub mod recognize;

pub use certificate::{
    coloring_from_certificate, complement_certificate, is_valid_certificate, verify_certificate, CertificateError,
    CertificateFault, CertificateJsonError, CertificateNode, QpCertificate, CERTIFICATE_SCHEMA,
};
pub use prime::{
    check_prime_clique, check_prime_independent_set, check_prime_set, is_prime_clique, is_prime_independent_set,
    prime_cliques, prime_independent_sets, prime_sets, PrimeSetKind, PrimeSetViolation, PrimeSets,
};
pub use recognize::{
    disjunctive_verdict, is_quasiperfect, Mode, RecognitionConfig, RecognitionError, RecognitionOutcome,
    RecognitionStats, Recognizer, Witness, DEFAULT_RECOGNITION_LIMIT,
};
