//! Small learners used inside samplers: k-means for cluster centroids, a
//! k-NN classifier for instance hardness and BalanceCascade, and a Pegasos
//! linear SVM for SVM-SMOTE.

pub mod kmeans;
pub mod knn;
pub mod svm;

pub use kmeans::{kmeans_fit, KMeansConfig, KMeansModel};
pub use knn::{knn_loo_true_class_proba, KnnClassifier, ProbEstimate};
pub use svm::{linear_svm_fit, LinearSvmModel, SvmConfig};
