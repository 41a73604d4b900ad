"""
Per-slice metrics of a mechanism's allocation, and the tables built from
them: the metrics CSV, summaries with confidence intervals, the CCDF of
improvement ratios and the delay comparison.
"""
import io

import numpy as np
import pandas as pd
from scipy.stats import norm

from ..constants import CSV_FLOAT_FORMAT
from ..constants import DOMAIN_NAMES
from ..constants import DOMAINS
from ..logs import logger
from ..oracle.solver import Welfare
from ..utility import Delay
from ..utility import UtilityParams
from ..utility import UtilityValue
from ..utils.exceptions import OutputError

METRICS_COLUMNS = ["mechanism", "seed", "load", "slice", "area", "x", "r_n",
                   "welfare", "iterations", "kkt_residual", "opex_per_unit"]

# Scalar metrics are the same on every record of one (mechanism,
# replication) and are averaged over replications, not slices:
SCALAR_METRICS = ["welfare", "iterations", "kkt_residual", "opex_per_unit"]
SLICE_METRICS = ["r_n", "x"]

DELAY_PAIRS = [("drp", "uniform"), ("drp", "md-drf"), ("drp", "pd-drf")]


class MetricsRecord(object):
    """
    One slice-area's outcome under one mechanism in one replication.

    utilization maps "util_<domain>_<resource>" to the mean utilization
    of that resource over the domain's nodes.  utility and delay keep the
    slice-area's parameters for the delay comparison.
    """
    # pylint: disable=too-many-instance-attributes
    # pylint: disable=too-many-arguments
    def __init__(self, mechanism, replication, seed, load, sliceId, area, x,
                 ratio, welfare, iterations=None, kktResidual=None,
                 opexPerUnit=0.0, utilization=None, converged=True,
                 utility=None, delay=None):
        self.mechanism = mechanism
        self.replication = replication
        self.seed = seed
        self.load = load if load is not None else ""
        self.sliceId = sliceId
        self.area = area
        self.x = x
        self.ratio = ratio
        self.welfare = welfare
        self.iterations = iterations
        self.kktResidual = kktResidual
        self.opexPerUnit = opexPerUnit
        self.utilization = utilization or []
        self.converged = converged
        self.utility = utility
        self.delay = delay

    def Row(self):
        """
        Values in METRICS_COLUMNS order followed by the utilization
        mapping.
        """
        row = dict([
            ("mechanism", self.mechanism), ("seed", self.seed),
            ("load", self.load), ("slice", self.sliceId),
            ("area", self.area), ("x", self.x), ("r_n", self.ratio),
            ("welfare", self.welfare),
            ("iterations", np.nan if self.iterations is None
             else self.iterations),
            ("kkt_residual", np.nan if self.kktResidual is None
             else self.kktResidual),
            ("opex_per_unit", self.opexPerUnit)])
        row.update(self.utilization)
        return row

    def __repr__(self):
        return "MetricsRecord(%s, slice=%s, area=%d, x=%.6g, r_n=%.6g)" % (
            self.mechanism, self.sliceId, self.area, self.x, self.ratio)


def DomainUtilization(allocation):
    """
    [(column name, mean utilization)] per domain and resource, domains
    in path order and resources in the order the nodes declare them.
    """
    index = allocation.index
    topology = index.scenario.topology
    utilization = allocation.Utilization()
    result = []
    for domain in DOMAINS:
        resources = []
        values = dict()
        for nodeId in topology.NodesInDomain(domain):
            for resource in topology.nodes[nodeId].resources:
                if resource not in values:
                    resources.append(resource)
                    values[resource] = []
                values[resource].append(
                    utilization[index.keyIndex[(nodeId, resource)]])
        for resource in resources:
            result.append(("util_%s_%s" % (DOMAIN_NAMES[domain], resource),
                           float(np.mean(values[resource]))))
    return result


def _RecordOrder(key):
    mechanism, replication, load, sliceId, area = key
    return (mechanism, replication, str(load), sliceId, area)


def BuildRecords(mechanism, allocation, uniform, replication=0, seed=None,
                 load=None, iterations=None, kktResidual=None,
                 converged=True):
    """
    One MetricsRecord per slice-area of allocation.

    :param uniform: the matched uniform comparator (AllocationState); the
                    improvement ratio is x_{n,l} / x^uni_{n,l}, NaN where
                    the comparator is empty
    """
    index = allocation.index
    scenario = index.scenario
    xArea = allocation.xAreaArray
    xUniform = uniform.xAreaArray
    ratios = np.divide(xArea, xUniform, out=np.full(len(xArea), np.nan),
                       where=xUniform > 0)
    welfare = float(Welfare(allocation))
    opexPerUnit = allocation.OpexPerUnitTraffic()
    utilization = DomainUtilization(allocation)
    records = []
    for g, (sliceId, area) in enumerate(index.groupKeys):
        spec = scenario.slices[sliceId].areas[area]
        records.append(MetricsRecord(
            mechanism, replication, seed, load, sliceId, area,
            float(xArea[g]), float(ratios[g]), welfare, iterations,
            kktResidual, opexPerUnit, utilization, converged,
            spec.utility, spec.delay))
    return records


def MetricsTable(records):
    """
    pandas DataFrame with the metrics columns, then utilization columns
    in order of first appearance.
    """
    columns = list(METRICS_COLUMNS)
    for record in records:
        for name, _ in record.utilization:
            if name not in columns:
                columns.append(name)
    rows = []
    for record in records:
        rows.append(record.Row())
    return pd.DataFrame(rows, columns=columns)


def _WriteTable(table, path):
    try:
        with io.open(path, "w", encoding="utf-8", newline="") as csvFile:
            table.to_csv(csvFile, index=False,
                         float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    except (IOError, OSError) as err:
        raise OutputError("Couldn't write %s: %s" % (path, err), path)
    logger.info("Wrote %d rows to %s" % (len(table), path))


def EmitCsv(records, path):
    """
    Write the metrics table as UTF-8 CSV with a header row; floats are
    rendered with 9 significant digits, missing values as empty fields.
    """
    _WriteTable(MetricsTable(records), path)


def _HalfWidth(values, confidence):
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        return 0.0
    quantile = norm.ppf(0.5 + confidence / 2.0)
    return float(quantile * np.std(values, ddof=1) / np.sqrt(len(values)))


def Summarize(records, confidence=0.95):
    """
    Per (mechanism, load) mean and normal-approximation confidence
    half-width of every metric.  Per-slice metrics average over slices
    and replications; scalar metrics over replications.

    :returns: DataFrame with columns mechanism, load, metric, count,
              mean, ci
    """
    table = MetricsTable(records)
    table["replication"] = [record.replication for record in records]
    utilColumns = [column for column in table.columns
                   if column.startswith("util_")]
    rows = []
    for (mechanism, load), group in table.groupby(["mechanism", "load"],
                                                  sort=True):
        perReplication = group.drop_duplicates("replication")
        for metric in SLICE_METRICS + SCALAR_METRICS + utilColumns:
            source = group if metric in SLICE_METRICS else perReplication
            values = source[metric].dropna().astype(float)
            values = values[np.isfinite(values)]
            if len(values) == 0:
                continue
            rows.append(dict([
                ("mechanism", mechanism), ("load", load), ("metric", metric),
                ("count", len(values)), ("mean", float(values.mean())),
                ("ci", _HalfWidth(values, confidence))]))
    return pd.DataFrame(
        rows, columns=["mechanism", "load", "metric", "count", "mean", "ci"])


def RatioGrid(low=1.0, high=3.0, step=0.1):
    """
    low, low + step, ..., high (inclusive).
    """
    count = int(round((high - low) / step)) + 1
    return np.round(low + step * np.arange(count), 12)


def Ccdf(records, grid=None):
    """
    Empirical P(R > r) of the improvement ratio for each r of the grid,
    per (mechanism, load).
    """
    grid = RatioGrid() if grid is None else np.asarray(grid, dtype=float)
    rows = []
    table = MetricsTable(records)
    for (mechanism, load), group in table.groupby(["mechanism", "load"],
                                                  sort=True):
        ratios = group["r_n"].astype(float).values
        ratios = ratios[np.isfinite(ratios)]
        if len(ratios) == 0:
            continue
        for r in grid:
            rows.append(dict([("mechanism", mechanism), ("load", load),
                              ("r", float(r)),
                              ("ccdf", float(np.mean(ratios > r)))]))
    return pd.DataFrame(rows, columns=["mechanism", "load", "r", "ccdf"])


class DelayComparison(object):
    """
    Delay improvement of mechanism A over mechanism B on identical
    scenarios.  For each slice-area the offered load is
    rho = loadFraction * min(x_A, x_B); D_B / D_A compares the two
    end-to-end delays.  Slice-areas where either mechanism provisions
    nothing are excluded and counted.

    Usage:

        comparison = DelayComparison(records, DELAY_PAIRS)
        comparison.summary    # per pair and load
        comparison.details    # per slice-area
    """
    def __init__(self, records, pairs=None, loadFraction=0.95):
        self.pairs = DELAY_PAIRS if pairs is None else pairs
        self.loadFraction = loadFraction
        self.detailRows = []
        self.summaryRows = []
        byKey = dict()
        for record in records:
            byKey[(record.mechanism, record.replication, record.load,
                   record.sliceId, record.area)] = record
        for mechanismA, mechanismB in self.pairs:
            self._Compare(byKey, mechanismA, mechanismB)

    def _Compare(self, byKey, mechanismA, mechanismB):
        perLoad = dict()
        for key in sorted(byKey, key=_RecordOrder):
            if key[0] != mechanismA:
                continue
            other = byKey.get((mechanismB,) + key[1:])
            if other is None:
                continue
            record = byKey[key]
            ratios, excluded = perLoad.setdefault(record.load, ([], [0]))
            row = self._Row(record, other)
            if row is None:
                excluded[0] += 1
                continue
            ratios.append(row["ratio"])
            self.detailRows.append(row)
        for load in sorted(perLoad, key=str):
            ratios, excluded = perLoad[load]
            self.summaryRows.append(dict([
                ("mechanism_a", mechanismA), ("mechanism_b", mechanismB),
                ("load", load), ("count", len(ratios)),
                ("excluded", excluded[0]),
                ("mean_ratio", float(np.mean(ratios)) if ratios
                 else np.nan)]))
            if excluded[0]:
                logger.info("Delay comparison %s vs %s (%s load): %d "
                            "slice-areas excluded"
                            % (mechanismA, mechanismB, load, excluded[0]))

    def _Row(self, recordA, recordB):
        rho = self.loadFraction * min(recordA.x, recordB.x)
        if not rho > 0:
            return None
        offered = UtilityParams(rho, recordA.utility.alpha)
        delayA = float(Delay(recordA.delay, offered, recordA.x))
        delayB = float(Delay(recordB.delay, offered, recordB.x))
        beta = recordA.delay.beta
        return dict([
            ("mechanism_a", recordA.mechanism),
            ("mechanism_b", recordB.mechanism),
            ("seed", recordA.seed), ("load", recordA.load),
            ("slice", recordA.sliceId), ("area", recordA.area),
            ("rho", rho), ("delay_a", delayA), ("delay_b", delayB),
            ("ratio", delayB / delayA),
            ("net_revenue_a",
             float(UtilityValue(recordA.utility, recordA.x)) - beta * delayA),
            ("net_revenue_b",
             float(UtilityValue(recordB.utility, recordB.x)) - beta * delayB)])

    @property
    def summary(self):
        """
        DataFrame: mechanism_a, mechanism_b, load, count, excluded,
        mean_ratio
        """
        return pd.DataFrame(self.summaryRows, columns=[
            "mechanism_a", "mechanism_b", "load", "count", "excluded",
            "mean_ratio"])

    @property
    def details(self):
        """
        DataFrame with one row per compared slice-area
        """
        return pd.DataFrame(self.detailRows, columns=[
            "mechanism_a", "mechanism_b", "seed", "load", "slice", "area",
            "rho", "delay_a", "delay_b", "ratio", "net_revenue_a",
            "net_revenue_b"])

    def MeanRatio(self, mechanismA, mechanismB):
        """
        Mean D_B / D_A over every load level; NaN if nothing compared.
        """
        ratios = [row["ratio"] for row in self.detailRows
                  if row["mechanism_a"] == mechanismA and
                  row["mechanism_b"] == mechanismB]
        return float(np.mean(ratios)) if ratios else np.nan


def SiblingPath(path, suffix):
    """
    "out/metrics.csv", "summary" -> "out/metrics.summary.csv"
    """
    stem, dot, extension = path.rpartition(".")
    if not dot or "/" in extension or "\\" in extension:
        return "%s.%s.csv" % (path, suffix)
    return "%s.%s.%s" % (stem, suffix, extension)


def EmitTables(records, path, grid=None, loadFraction=0.95, pairs=None):
    """
    The metrics CSV at path, with summary, CCDF and delay tables next to
    it.
    """
    EmitCsv(records, path)
    _WriteTable(Summarize(records), SiblingPath(path, "summary"))
    _WriteTable(Ccdf(records, grid), SiblingPath(path, "ccdf"))
    comparison = DelayComparison(records, pairs, loadFraction)
    _WriteTable(comparison.details, SiblingPath(path, "delay"))
    return comparison
