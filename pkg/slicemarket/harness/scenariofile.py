"""
YAML scenario documents.

A document has three top-level keys:

  topology: areas, nodes (id, domain, resources, capacity, opex) and
            paths (id, area, nodes);
  slices:   id, per-area phi/alpha/budget (plus optional z0 and delay
            parameters) and per-(path, node) demand vectors;
  config:   optional run parameters (epsilon, step, zeta, load).

Saving writes block style with keys in schema order, so a document
written by SaveScenario loads and saves back byte-identically.
"""
import io

import yaml

from ..logs import logger
from ..models.scenario import Scenario
from ..models.slice import DemandVector
from ..models.slice import SliceAreaSpec
from ..models.slice import SliceSpec
from ..models.topology import NodeSpec
from ..models.topology import PathSpec
from ..models.topology import TopologySpec
from ..utility import DelayParams
from ..utility import UtilityParams
from ..utils.exceptions import DomainError
from ..utils.exceptions import InvalidScenario
from ..utils.exceptions import OutputError
from ..utils.exceptions import StructuralError

DEFAULT_DELAY = DelayParams()


def _Require(mapping, key, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise InvalidScenario("Missing \"%s\" in %s" % (key, where), key)
    return mapping[key]


def _Floats(values, field):
    try:
        return [float(value) for value in values]
    except (TypeError, ValueError):
        raise InvalidScenario("%s must be a list of numbers" % field, field)


def ScenarioFromDocument(document):
    """
    Build a validated Scenario from a parsed YAML document.
    """
    topologyDoc = _Require(document, "topology", "the scenario document")
    try:
        nodes = [NodeSpec(_Require(node, "id", "a node"),
                          _Require(node, "domain", "a node"),
                          _Require(node, "resources", "a node"),
                          _Floats(_Require(node, "capacity", "a node"),
                                  "capacity"),
                          _Floats(_Require(node, "opex", "a node"), "opex"))
                 for node in _Require(topologyDoc, "nodes", "topology")]
        paths = [PathSpec(_Require(path, "id", "a path"),
                          _Require(path, "area", "a path"),
                          _Require(path, "nodes", "a path"))
                 for path in _Require(topologyDoc, "paths", "topology")]
        topology = TopologySpec(
            nodes, _Require(topologyDoc, "areas", "topology"), paths)
        slices = [_SliceFromDocument(sliceDoc)
                  for sliceDoc in document.get("slices") or []]
        return Scenario(topology, slices, document.get("config") or {})
    except (DomainError, StructuralError) as err:
        raise InvalidScenario(str(err))


def _SliceFromDocument(sliceDoc):
    sliceId = _Require(sliceDoc, "id", "a slice")
    areas = dict()
    for areaDoc in _Require(sliceDoc, "areas", "slice %s" % sliceId):
        area = int(_Require(areaDoc, "area", "slice %s" % sliceId))
        utility = UtilityParams(
            _Require(areaDoc, "phi", "slice %s area %d" % (sliceId, area)),
            _Require(areaDoc, "alpha", "slice %s area %d" % (sliceId, area)),
            areaDoc.get("z0"))
        delay = DelayParams(
            areaDoc.get("packet_length", DEFAULT_DELAY.packetLength),
            areaDoc.get("hops", DEFAULT_DELAY.hops),
            areaDoc.get("beta", DEFAULT_DELAY.beta))
        areas[area] = SliceAreaSpec(
            utility, _Require(areaDoc, "budget",
                              "slice %s area %d" % (sliceId, area)), delay)
    demands = dict()
    for demandDoc in _Require(sliceDoc, "demands", "slice %s" % sliceId):
        key = (str(_Require(demandDoc, "path", "a demand")),
               str(_Require(demandDoc, "node", "a demand")))
        demands[key] = DemandVector(
            _Floats(_Require(demandDoc, "values", "a demand"), "values"))
    return SliceSpec(sliceId, areas, demands)


def ScenarioToDocument(scenario):
    """
    Plain nested dicts and lists in schema order.
    """
    topology = scenario.topology
    nodes = []
    for nodeId in topology.SortedNodeIds():
        node = topology.nodes[nodeId]
        nodes.append(dict([
            ("id", node.nodeId), ("domain", node.domain),
            ("resources", list(node.resources)),
            ("capacity", node.capacity.ToList()),
            ("opex", node.opex.ToList())]))
    paths = [dict([("id", path.pathId), ("area", path.area),
                   ("nodes", list(path.nodeIds))])
             for path in topology.SortedPaths()]
    slices = []
    for sliceSpec in scenario.SortedSlices():
        areas = []
        for area in sorted(sliceSpec.areas):
            spec = sliceSpec.areas[area]
            areaDoc = dict([("area", area), ("phi", spec.utility.phi),
                            ("alpha", spec.utility.alpha),
                            ("budget", spec.budget)])
            if spec.utility._z0 is not None:
                areaDoc["z0"] = spec.utility._z0
            areaDoc["packet_length"] = spec.delay.packetLength
            areaDoc["hops"] = spec.delay.hops
            areaDoc["beta"] = spec.delay.beta
            areas.append(areaDoc)
        demands = [dict([("path", pathId), ("node", nodeId),
                         ("values", sliceSpec.demands[(pathId,
                                                       nodeId)].ToList())])
                   for pathId, nodeId in sorted(sliceSpec.demands)]
        slices.append(dict([("id", sliceSpec.sliceId), ("areas", areas),
                            ("demands", demands)]))
    document = dict([
        ("topology", dict([("areas", topology.numAreas), ("nodes", nodes),
                           ("paths", paths)])),
        ("slices", slices)])
    if scenario.config:
        document["config"] = dict(scenario.config)
    return document


def DumpScenario(scenario):
    """
    YAML text of a scenario.
    """
    return yaml.safe_dump(ScenarioToDocument(scenario), sort_keys=False,
                          default_flow_style=False)


def ParseScenario(text):
    """
    Scenario from YAML text.
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as err:
        raise InvalidScenario("Invalid YAML: %s" % err)
    if not isinstance(document, dict):
        raise InvalidScenario("A scenario document must be a mapping")
    return ScenarioFromDocument(document)


def LoadScenario(path):
    """
    Read and validate a scenario file.
    """
    try:
        with io.open(path, "r", encoding="utf-8") as scenarioFile:
            text = scenarioFile.read()
    except (IOError, OSError) as err:
        raise InvalidScenario("Couldn't read %s: %s" % (path, err), "path")
    scenario = ParseScenario(text)
    logger.info("Loaded scenario %s: %d nodes, %d paths, %d slices"
                % (path, len(scenario.topology.nodes),
                   len(scenario.topology.paths), len(scenario.slices)))
    return scenario


def SaveScenario(scenario, path):
    """
    Write a scenario file.
    """
    try:
        with io.open(path, "w", encoding="utf-8", newline="\n") \
                as scenarioFile:
            scenarioFile.write(DumpScenario(scenario))
    except (IOError, OSError) as err:
        raise OutputError("Couldn't write %s: %s" % (path, err), path)
    logger.info("Saved scenario to %s" % path)
