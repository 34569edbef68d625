from newscat.models.base import predict_labels, save_model, load_model
from newscat.models.naive_bayes import MultinomialNaiveBayes, GaussianNaiveBayes
from newscat.models.linear import SoftmaxRegression
from newscat.models.boosting import GradientBoostedTrees
from newscat.models.lstm import LstmClassifier
