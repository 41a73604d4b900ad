"""
slicemarket/__init__.py

End-to-end network slice resource provisioning: the DRP auction,
baseline allocators, an optimization oracle and an experiment harness.
"""
__version__ = "0.3.0"
