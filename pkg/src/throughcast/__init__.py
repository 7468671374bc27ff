"""Hourly throughput forecasting: ARIMA/SARIMA by CSS, stepwise AIC search,
a small 1-D CNN comparison model, PCA, diagnostics and a benchmark harness."""

from .errors import DataError, NumericalError, ThroughcastError
from .series import (TimeSeries, DataSplit, NormalizationParams, generate_synthetic, minmax_normalize,
                     denormalize, difference, undifference, split_train_val_test, parse_subscriber_csv,
                     write_subscriber_csv)
from .diagnostics import adf_test, acf, pacf, correlogram, ljung_box, DiagnosticsReport
from .arima import ModelOrder, ArimaFit, ForecastResult, fit, fit_partitioned, forecast, evaluate, simulate
from .autoarima import select_d, stepwise_search, format_trace
from .cnn import CnnConfig, CnnModel, TrainReport
from .pca import PcaModel, fit_pca
from .evalbench import rmse, mape, balanced_accuracy, ConfusionCounts, MetricReport, SpeedTable

__version__ = "0.1.0"
