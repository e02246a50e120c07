import os
from typing import Optional

from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor, ConsoleSpanExporter

from ..config import settings
from ..utils.logging import get_logger

logger = get_logger(__name__)

_provider: Optional[TracerProvider] = None


def setup_tracing() -> Optional[TracerProvider]:
    """
    Bootstrap OpenTelemetry when TRACING_ENABLED is set.
    Spans go to OTLP if OTEL_EXPORTER_OTLP_ENDPOINT is set, otherwise to the console.
    """
    global _provider
    if not settings.TRACING_ENABLED or _provider is not None:
        return _provider

    resource = Resource.create(attributes={
        "service.name": settings.PROJECT_NAME,
        "service.version": settings.PROJECT_VERSION,
        "deployment.environment": settings.ENVIRONMENT,
    })
    provider = TracerProvider(resource=resource)

    endpoint = os.getenv("OTEL_EXPORTER_OTLP_ENDPOINT")
    if endpoint:
        try:
            from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter

            provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter(endpoint=endpoint)))
            logger.info(f"OpenTelemetry enabled. Exporter: {endpoint}")
        except Exception as e:
            logger.error(f"Failed to initialize OTLP exporter: {e}")
    else:
        provider.add_span_processor(BatchSpanProcessor(ConsoleSpanExporter()))

    trace.set_tracer_provider(provider)
    _provider = provider
    return provider


def get_tracer(name: str):
    return trace.get_tracer(name)
