"""
Custom logging for SliceMarket allows logging to an in-memory buffer
(inspected by tests and summarized by the command-line interface), to
stderr, and to a debug log file when SLICEMARKET_DEBUG_LOG_PATH is set.
"""
# We want logger singleton to be lowercase, and we want logger.info,
# logger.warning etc. methods to be lowercase:
# pylint: disable=invalid-name
import threading
import logging
import os
import sys
import inspect
from io import StringIO


class SliceMarketFormatter(logging.Formatter):
    """
    Can be used to handle logging messages coming from non-SliceMarket
    modules (e.g. scipy warnings) which lack the extra attributes.
    """
    def format(self, record):
        """
        Overridden from logging.Formatter class
        """
        if not hasattr(record, 'moduleName'):
            record.moduleName = ''
        if not hasattr(record, 'functionName'):
            record.functionName = ''
        if not hasattr(record, 'currentThreadName'):
            record.currentThreadName = ''
        if not hasattr(record, 'lineNumber'):
            record.lineNumber = 0
        return super(SliceMarketFormatter, self).format(record)


class Logger(object):
    """
    Allows logger.debug(...), logger.info(...) etc. to write to the
    in-memory log, to stderr (warnings and errors only) and optionally
    to a debug log file.
    """
    # pylint: disable=too-many-instance-attributes
    def __init__(self, name):
        self.name = name
        self.loggerObject = logging.getLogger(self.name)
        self.formatString = ""
        self.loggerOutput = None
        self.streamHandler = None
        self.stderrHandler = None
        self.fileHandler = None
        self.level = logging.INFO
        self.appRootDir = os.path.dirname(
            os.path.dirname(os.path.realpath(__file__)))
        self.ConfigureLogger()

    def ConfigureLogger(self):
        """
        Configure logger object
        """
        self.loggerObject = logging.getLogger(self.name)
        self.loggerObject.setLevel(self.level)
        self.loggerObject.propagate = False

        self.formatString = \
            "%(asctime)s - %(moduleName)s - %(lineNumber)d - " \
            "%(functionName)s - %(currentThreadName)s - %(levelname)s - " \
            "%(message)s"

        # Send all log messages to a string.
        self.loggerOutput = StringIO()
        self.streamHandler = logging.StreamHandler(stream=self.loggerOutput)
        self.streamHandler.setLevel(self.level)
        self.streamHandler.setFormatter(
            SliceMarketFormatter(self.formatString))
        self.loggerObject.addHandler(self.streamHandler)

        # Warnings and errors also go to stderr, unless we're testing.
        if 'SLICEMARKET_TESTING' not in os.environ:
            self.stderrHandler = logging.StreamHandler(stream=sys.stderr)
            self.stderrHandler.setLevel(logging.WARNING)
            self.stderrHandler.setFormatter(
                SliceMarketFormatter("%(levelname)s - %(message)s"))
            self.loggerObject.addHandler(self.stderrHandler)

        # Finally, send all log messages to a log file if requested.
        if 'SLICEMARKET_DEBUG_LOG_PATH' in os.environ:
            logFilePath = \
                os.path.abspath(os.environ['SLICEMARKET_DEBUG_LOG_PATH'])
            if os.path.isdir(logFilePath):
                logFilePath = os.path.join(logFilePath,
                                           ".SliceMarket_debug_log.txt")
            self.fileHandler = logging.FileHandler(logFilePath)
            self.fileHandler.setLevel(self.level)
            self.fileHandler.setFormatter(
                SliceMarketFormatter(self.formatString))
            self.loggerObject.addHandler(self.fileHandler)

    def GetLevel(self):
        """
        Returns the logging level, e.g. logging.DEBUG
        """
        return self.level

    def SetLevel(self, level):
        """
        Sets the logging level, e.g. logging.DEBUG

        The stderr handler keeps its WARNING threshold.
        """
        self.level = level
        self.loggerObject.setLevel(self.level)
        for handler in self.loggerObject.handlers:
            if handler is not self.stderrHandler:
                handler.setLevel(self.level)

    def _Extra(self):
        """
        Describe the caller of logger.debug(...), logger.info(...) etc.
        """
        frame = inspect.currentframe()
        try:
            outerFrame = inspect.getouterframes(frame)[2]
        finally:
            del frame
        try:
            moduleName = os.path.relpath(outerFrame[1], self.appRootDir)
        except ValueError:
            moduleName = os.path.basename(outerFrame[1])
        return {'moduleName': moduleName,
                'lineNumber': outerFrame[2],
                'functionName': outerFrame[3],
                'currentThreadName': threading.current_thread().name}

    def debug(self, message):
        """
        Log a message with level logging.DEBUG
        """
        if self.level > logging.DEBUG:
            return
        self.loggerObject.debug(message, extra=self._Extra())

    def info(self, message):
        """
        Log a message with level logging.INFO
        """
        if self.level > logging.INFO:
            return
        self.loggerObject.info(message, extra=self._Extra())

    def warning(self, message):
        """
        Log a message with level logging.WARNING
        """
        if self.level > logging.WARNING:
            return
        self.loggerObject.warning(message, extra=self._Extra())

    def error(self, message):
        """
        Log a message with level logging.ERROR
        """
        self.loggerObject.error(message, extra=self._Extra())

    def GetValue(self):
        """
        Return all logs sent to StringIO handler
        """
        self.streamHandler.flush()
        return self.loggerOutput.getvalue()

    def ErrorSummary(self, maxErrors=100):
        """
        Collect the ERROR lines logged so far, truncated after maxErrors.
        """
        summary = ""
        errorCount = 0
        for line in self.GetValue().splitlines(True):
            if " - ERROR - " in line:
                errorCount += 1
                if errorCount > maxErrors:
                    summary += "*** TRUNCATING ERROR SUMMARY " \
                        "AFTER %d ERRORS ***\n" % maxErrors
                    break
                summary += line
        return summary


logger = Logger("SliceMarket")
